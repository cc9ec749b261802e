#!/usr/bin/env python3
"""Export the group corpus used by the conductor toolkit.

Every group is built from concrete generators (permutations or 2x2 matrices
over F_3). Conjugacy classes, power maps, centralizers, fusion maps and the
u*s class maps come from element arithmetic. Ordinary character tables are
computed numerically with the Burnside/Dixon class-matrix method; exact
values are recovered by reading off eigenvalue multiplicities, which are
integers. Brauer characters are the indecomposable restricted characters
(Fong-Swan) for p-solvable groups; for A5 they are given as explicit integer
combinations of restricted ordinary characters. Blocks are the linkage
classes of the decomposition matrix, and Brauer correspondents are found by
comparing central characters modulo a prime above p.

Usage: python3 tools/export_corpus.py [--out data] [--fixtures DIR]
"""

import argparse
import json
import math
import os
from fractions import Fraction

import numpy as np

TOL = 1e-6


# ---------------------------------------------------------------------------
# small number theory


def factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def lcm(a, b):
    return a * b // math.gcd(a, b)


def ppart(n, p):
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a, n


def nu(n, p):
    return ppart(n, p)[0]


# ---------------------------------------------------------------------------
# exact cyclotomics (integer/rational vectors over zeta_n, Zumbroich basis)


def _digit(e, n, p):
    k = factor(n)[p]
    pk = p ** k
    u = n // pk
    a = (e * pow(u, -1, pk)) % pk
    return a // (p ** (k - 1))


def canonicalize(n, coeffs):
    """Reduce a dense vector over zeta_n exponents to the Zumbroich basis."""
    c = list(coeffs)
    for p, k in sorted(factor(n).items()):
        step = n // p
        for e in range(n):
            if c[e] == 0:
                continue
            d = _digit(e, n, p)
            forbidden = (d == 1) if p == 2 else (d == 0)
            if forbidden:
                v = c[e]
                c[e] = 0
                for i in range(1, p):
                    c[(e + i * step) % n] -= v
    return c


def descend(n, c):
    changed = True
    while changed and n > 1:
        changed = False
        for p, k in sorted(factor(n).items()):
            if p == 2 and k == 1:
                raise ValueError("order 2 mod 4")
            nz = [e for e in range(n) if c[e] != 0]
            if (p == 2 and k >= 2) or (p != 2 and k >= 2):
                div = 4 if (p == 2 and k == 2) else p
                if all(e % div == 0 for e in nz):
                    m = n // div
                    nc = [0] * m
                    for e in nz:
                        nc[e // div] = c[e]
                    n, c = m, nc
                    changed = True
                    break
            else:
                step = n // p
                ok = True
                groups = {}
                for e in range(n):
                    if _digit(e, n, p) == 0:
                        vals = [c[(e + i * step) % n] for i in range(1, p)]
                        if any(v != vals[0] for v in vals):
                            ok = False
                            break
                        groups[e] = vals[0]
                if ok:
                    m = n // p
                    nc = [0] * m
                    for e, v in groups.items():
                        if v != 0:
                            nc[e // p] = -v
                    n, c = m, nc
                    changed = True
                    break
    return n, c


def normal_form(m, mult):
    """mult: dict exponent->int over zeta_m. Returns (order, dense canonical)."""
    n = m
    scale = 1
    if n % 4 == 2:
        n, scale = 2 * m, 2
    dense = [0] * n
    for j, a in mult.items():
        dense[(j * scale) % n] += a
    dense = canonicalize(n, dense)
    return descend(n, dense)


def fmt_coeff(v):
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return "%d/%d" % (v.numerator, v.denominator)


def cyclo_str(m, mult):
    n, c = normal_form(m, mult)
    if n == 1:
        return fmt_coeff(c[0])
    out = ""
    for e in range(n):
        v = Fraction(c[e])
        if v == 0:
            continue
        neg = v < 0
        a = -v if neg else v
        if e == 0:
            body = fmt_coeff(a)
        else:
            atom = "E(%d)" % n if e == 1 else "E(%d)^%d" % (n, e)
            body = atom if a == 1 else fmt_coeff(a) + "*" + atom
        if out == "":
            out = ("-" if neg else "") + body
        else:
            out += ("-" if neg else "+") + body
    return out if out else "0"


# ---------------------------------------------------------------------------
# finite fields, for reduction modulo a prime above p


class GF:
    def __init__(self, p, f):
        self.p, self.f = p, f
        self.q = p ** f
        self.mod = self._find_modulus()

    def _polys(self, deg):
        for idx in range(self.p ** deg):
            coeffs = []
            x = idx
            for _ in range(deg):
                coeffs.append(x % self.p)
                x //= self.p
            yield coeffs + [1]

    def _polymod(self, a, m):
        a = list(a)
        while len(a) >= len(m):
            lead = a[-1] % self.p
            shift = len(a) - len(m)
            for i in range(len(m)):
                a[shift + i] = (a[shift + i] - lead * m[i]) % self.p
            a.pop()
        return a

    def _find_modulus(self):
        for cand in self._polys(self.f):
            ok = True
            for d in range(1, self.f // 2 + 1):
                for g in self._polys(d):
                    if all(v == 0 for v in self._polymod(cand, g)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return cand
        raise RuntimeError("no irreducible")

    def elem(self, idx):
        out = []
        for _ in range(self.f):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def one(self):
        return self.elem(1)

    def zero(self):
        return self.elem(0)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def scal(self, k, a):
        return tuple((k * x) % self.p for x in a)

    def mul(self, a, b):
        prod = [0] * (2 * self.f - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        r = self._polymod(prod, self.mod) if len(prod) >= len(self.mod) else prod
        r = list(r) + [0] * (self.f - len(r))
        return tuple(r[: self.f])

    def pow(self, a, e):
        r = self.one()
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def order(self, a):
        n = self.q - 1
        for r in sorted(factor(n)):
            while n % r == 0 and self.pow(a, n // r) == self.one():
                n //= r
        return n


class Residue:
    def __init__(self, N, p):
        a, n1 = ppart(N, p)
        f = 1
        while n1 > 1 and pow(p, f, n1) != 1:
            f += 1
        self.F = GF(p, f)
        self.N, self.p = N, p
        gen = None
        for idx in range(1, self.F.q):
            x = self.F.elem(idx)
            if self.F.order(x) == self.F.q - 1:
                gen = x
                break
        root = self.F.pow(gen, (self.F.q - 1) // n1)
        x = pow(p ** a, -1, n1) if n1 > 1 else 0
        self.zeta = self.F.pow(root, x)

    def reduce_mult(self, m, mult, num=1, den=1):
        """num/den * sum_j mult[j] zeta_m^j, with p not dividing den."""
        F = self.F
        acc = F.zero()
        for j, a in mult.items():
            acc = F.add(acc, F.scal(a, F.pow(self.zeta, (j * self.N // m) % self.N)))
        k = (num * pow(den % self.p, -1, self.p)) % self.p
        return F.scal(k, acc)


# ---------------------------------------------------------------------------
# groups


def perm_mul(a, b):
    return tuple(a[i] for i in b)


def perm(n, *cycles):
    img = list(range(n))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            img[x] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def mat_mul(a, b):
    return (
        (a[0] * b[0] + a[1] * b[2]) % 3,
        (a[0] * b[1] + a[1] * b[3]) % 3,
        (a[2] * b[0] + a[3] * b[2]) % 3,
        (a[2] * b[1] + a[3] * b[3]) % 3,
    )


class Group:
    def __init__(self, elems, mul):
        self.mul = mul
        self.elems = sorted(elems)
        self.index = {x: i for i, x in enumerate(self.elems)}
        self.n = len(self.elems)
        self.ident = next(x for x in self.elems if all(mul(x, y) == y for y in self.elems))
        n = self.n
        self.table = [[self.index[mul(self.elems[i], self.elems[j])] for j in range(n)] for i in range(n)]
        e = self.index[self.ident]
        self.inv = [next(j for j in range(n) if self.table[i][j] == e) for i in range(n)]
        self.order_of = []
        for i in range(n):
            k, x = 1, i
            while x != e:
                x = self.table[x][i]
                k += 1
            self.order_of.append(k)

    @staticmethod
    def generate(gens, mul):
        elems = list(gens)
        seen = set(elems)
        i = 0
        while i < len(elems):
            for g in gens:
                y = mul(elems[i], g)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
            i += 1
        return Group(elems, mul)

    def sub(self, elems):
        return Group(list(elems), self.mul)

    def subgroup(self, gens):
        return Group.generate(list(gens), self.mul)

    def power(self, i, k):
        r = self.index[self.ident]
        for _ in range(k):
            r = self.table[r][i]
        return r

    def conj(self, g, x):
        return self.table[self.table[g][x]][self.inv[g]]

    def centralizer(self, x):
        return self.sub(self.elems[g] for g in range(self.n) if self.table[g][x] == self.table[x][g])

    def normalizer(self, sub_elems):
        s = {self.index[y] for y in sub_elems}
        out = []
        for g in range(self.n):
            if {self.conj(g, y) for y in s} == s:
                out.append(self.elems[g])
        return self.sub(out)

    def exponent(self):
        e = 1
        for o in self.order_of:
            e = lcm(e, o)
        return e


# ---------------------------------------------------------------------------
# character tables


class Table:
    def __init__(self, name, G):
        self.name, self.G = name, G
        self._classes()
        self._power_maps()
        self._characters()

    def _classes(self):
        G = self.G
        seen = set()
        raw = []
        for x in range(G.n):
            if x in seen:
                continue
            cls = sorted({G.conj(g, x) for g in range(G.n)})
            seen.update(cls)
            raw.append(cls)
        raw.sort(key=lambda c: (G.order_of[c[0]], len(c), c[0]))
        self.classes = raw
        self.class_of = {}
        for ci, c in enumerate(raw):
            for x in c:
                self.class_of[x] = ci
        self.reps = [c[0] for c in raw]
        self.orders = [G.order_of[r] for r in self.reps]
        self.sizes = [len(c) for c in raw]
        counts = {}
        self.names = []
        for o in self.orders:
            k = counts.get(o, 0)
            counts[o] = k + 1
            self.names.append("%d%s" % (o, "abcdefghijklmnopqrstuvwxyz"[k]))
        self.exponent = G.exponent()

    def pow_class(self, c, k):
        return self.class_of[self.G.power(self.reps[c], k % self.orders[c])]

    def _power_maps(self):
        primes = sorted(factor(self.exponent)) if self.exponent > 1 else []
        self.powermaps = [{q: self.pow_class(c, q) for q in primes} for c in range(len(self.classes))]

    def _characters(self):
        G = self.G
        k = len(self.classes)
        counts = np.zeros((k, k, k))
        for i in range(k):
            for j in range(k):
                for x in self.classes[i]:
                    row = G.table[x]
                    for y in self.classes[j]:
                        counts[i, j, self.class_of[row[y]]] += 1
        a = counts / np.array(self.sizes)[None, None, :]
        rng = np.random.default_rng(7)
        for _ in range(20):
            r = rng.normal(size=k)
            M = np.einsum("ijl,j->il", a, r)
            w, v = np.linalg.eig(M)
            if min(abs(w[i] - w[j]) for i in range(k) for j in range(i)) > 1e-4 if k > 1 else True:
                break
        chars = []
        for col in range(k):
            om = v[:, col] / v[0, col]
            s = sum(abs(om[l]) ** 2 / self.sizes[l] for l in range(k))
            deg = math.sqrt(G.n / s.real)
            d = round(deg)
            assert abs(deg - d) < TOL
            vals = np.array([d * om[l] / self.sizes[l] for l in range(k)])
            chars.append(vals)
        self.numeric = []
        self.exact = []
        for vals in chars:
            self.numeric.append(vals)
            self.exact.append([self.recover(vals, c) for c in range(k)])
        order = sorted(range(k), key=lambda i: self.sort_key(self.numeric[i]))
        self.numeric = [self.numeric[i] for i in order]
        self.exact = [self.exact[i] for i in order]
        self._check_orthogonality()

    def recover(self, vals, c):
        """Exact value at class c from values at all powers of its representative."""
        m = self.orders[c]
        mult = {}
        for j in range(m):
            acc = 0
            for t in range(m):
                z = np.exp(-2j * np.pi * j * t / m)
                acc += vals[self.pow_class(c, t)] * z
            acc /= m
            a = round(acc.real)
            assert abs(acc - a) < TOL and a >= 0, (self.name, c, acc)
            if a:
                mult[j] = a
        check = sum(a * np.exp(2j * np.pi * j / m) for j, a in mult.items())
        assert abs(check - vals[c]) < TOL
        return (m, mult)

    @staticmethod
    def sort_key(vals):
        key = [round(vals[0].real)]
        key.append(0 if all(abs(v - 1) < TOL for v in vals) else 1)
        for v in vals:
            key.append(round(-v.real, 6))
            key.append(round(-v.imag, 6))
        return key

    def _check_orthogonality(self):
        X = np.array(self.numeric)
        S = np.array(self.sizes)
        gram = (X * S) @ X.conj().T / self.G.n
        assert np.allclose(gram, np.eye(len(X)), atol=1e-8), self.name

    def to_json(self):
        return {
            "name": self.name,
            "order": self.G.n,
            "exponent": self.exponent,
            "classes": [
                {
                    "name": self.names[c],
                    "size": self.sizes[c],
                    "order": self.orders[c],
                    "powermaps": {str(q): i for q, i in sorted(self.powermaps[c].items())},
                }
                for c in range(len(self.classes))
            ],
            "irreducibles": [[cyclo_str(m, mult) for (m, mult) in row] for row in self.exact],
        }


# ---------------------------------------------------------------------------
# Brauer data


class Brauer:
    def __init__(self, T, p, combos=None):
        self.T, self.p = T, p
        self.regular = [c for c in range(len(T.classes)) if T.orders[c] % p != 0]
        restricted = [np.array([row[c] for c in self.regular]) for row in T.numeric]
        if combos is None:
            ibr = self._fong_swan(restricted)
        else:
            ibr = [sum(k * restricted[i] for i, k in enumerate(comb)) for comb in combos]
        assert len(ibr) == len(self.regular), (T.name, p, len(ibr), len(self.regular))
        ibr.sort(key=Table.sort_key)
        self.ibr_numeric = ibr
        B = np.array(ibr).T
        self.D = []
        for r in restricted:
            sol, *_ = np.linalg.lstsq(B, r, rcond=None)
            row = [round(x.real) for x in sol]
            assert np.allclose(B @ np.array(row), r, atol=1e-8), (T.name, p)
            assert all(x >= 0 for x in row)
            self.D.append(row)
        # Brauer values are sums of lifted p'-roots of unity
        self.ibr_exact = []
        for phi in ibr:
            full = np.zeros(len(T.classes), dtype=complex)
            for i, c in enumerate(self.regular):
                full[c] = phi[i]
            self.ibr_exact.append([T.recover(full, c) for c in self.regular])
        self._blocks()

    def _fong_swan(self, restricted):
        cands = []
        for r in restricted:
            if not any(np.allclose(r, c, atol=1e-8) for c in cands):
                cands.append(r)

        def decomposable(v, deg_bound):
            if np.allclose(v, 0, atol=1e-8):
                return True
            if v[0].real < 0.5:
                return False
            for c in cands:
                d = round(c[0].real)
                if d < deg_bound and d <= v[0].real + 0.5:
                    if decomposable(v - c, deg_bound):
                        return True
            return False

        return [c for c in cands if not decomposable(c, round(c[0].real))]

    def _blocks(self):
        T, p = self.T, self.p
        n_irr, n_ibr = len(self.D), len(self.D[0])
        parent = list(range(n_irr))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for j in range(n_ibr):
            rows = [i for i in range(n_irr) if self.D[i][j]]
            for i in rows[1:]:
                parent[find(i)] = find(rows[0])
        comps = {}
        for i in range(n_irr):
            comps.setdefault(find(i), []).append(i)
        full = nu(T.G.n, p)
        blocks = []
        for members in comps.values():
            defect = full - min(nu(round(T.numeric[i][0].real), p) for i in members)
            blocks.append((defect, members))
        blocks.sort(key=lambda b: (-b[0], min(b[1])))
        self.blocks = blocks
        self.block_of_irr = [0] * n_irr
        for bid, (_, members) in enumerate(blocks):
            for i in members:
                self.block_of_irr[i] = bid
        self.block_of_ibr = []
        for j in range(n_ibr):
            rows = {self.block_of_irr[i] for i in range(n_irr) if self.D[i][j]}
            assert len(rows) == 1
            self.block_of_ibr.append(rows.pop())
        assert self.block_of_irr[0] == 0

    def to_json(self):
        return {
            "regular_classes": self.regular,
            "ibr": [[cyclo_str(m, mult) for (m, mult) in row] for row in self.ibr_exact],
            "decomposition": self.D,
            "block_of_irr": self.block_of_irr,
            "block_of_ibr": self.block_of_ibr,
        }

    def omega_residues(self, res, block, fusion=None, n_target=None):
        """Central character of a p'-degree character of `block`, reduced, and
        optionally summed along a fusion map into a larger group's classes."""
        T = self.T
        cands = [i for i in self.blocks[block][1] if round(T.numeric[i][0].real) % self.p != 0]
        if not cands:
            return None
        chi = cands[0]
        deg = round(T.numeric[chi][0].real)
        vals = []
        for c in range(len(T.classes)):
            m, mult = T.exact[chi][c]
            vals.append(res.reduce_mult(m, mult, T.sizes[c], deg))
        if fusion is None:
            return vals
        out = [res.F.zero() for _ in range(n_target)]
        for c, tgt in enumerate(fusion):
            out[tgt] = res.F.add(out[tgt], vals[c])
        return out


def brauer_correspondent(res, small, fusion, big, n_big_classes):
    """Map each block of the subgroup to its Brauer-induced block of the big group."""
    out = {}
    for b in range(len(small.blocks)):
        lam = small.omega_residues(res, b, fusion, n_big_classes)
        if lam is None:
            continue
        hits = [B for B in range(len(big.blocks)) if big.omega_residues(res, B) == lam]
        assert len(hits) == 1, (small.T.name, b, hits)
        out[b] = hits[0]
    return out


# ---------------------------------------------------------------------------
# export


def fusion_map(G, Tsub, Tbig):
    return [Tbig.class_of[G.index[Tsub.G.elems[r]]] for r in Tsub.reps]


class Exporter:
    def __init__(self, name, G, primes, combos, subgroups):
        self.name, self.G, self.primes = name, G, primes
        self.combos = combos
        self.subgroups = subgroups
        self.T = Table(name, G)
        self.brauer = {p: Brauer(self.T, p, combos.get(p)) for p in primes}

    def local(self, name, H, p):
        if set(H.elems) == set(self.G.elems):
            return self.T, self.brauer[p]
        T = Table(name, H)
        return T, Brauer(T, p)

    def section(self, p, c):
        G, T = self.G, self.T
        u = T.reps[c]
        Cg = G.centralizer(u)
        CT, CB = self.local("C_%s(%s)" % (self.name, T.names[c]), Cg, p)
        fusion = fusion_map(G, CT, T)
        u_elem = G.elems[u]
        u_in = CT.class_of[CT.G.index[u_elem]]
        assert CT.sizes[u_in] == 1
        u_times = []
        for r in CT.reps:
            prod = CT.G.index[G.mul(u_elem, CT.G.elems[r])]
            u_times.append(CT.class_of[prod])
        if CT is T:
            corr = {b: b for b in range(len(CB.blocks))}
        else:
            res = Residue(T.exponent, p)
            corr = brauer_correspondent(res, CB, fusion, self.brauer[p], len(T.classes))
        cent = CT.to_json()
        cent["primes"] = {str(p): CB.to_json()}
        return {
            "u_class": c,
            "centralizer": cent,
            "fusion": fusion,
            "u_in_centralizer": u_in,
            "u_times": u_times,
            "correspondent_block": {str(k): v for k, v in sorted(corr.items())},
        }

    def subgroup(self, label, gens, primes):
        G, T = self.G, self.T
        H = G.subgroup(gens)
        HT = Table(label, H)
        fusion = fusion_map(G, HT, T)
        entry = {"name": label, "table": HT.to_json(), "fusion": fusion, "primes": {}}
        hset = set(H.elems)
        for p in primes:
            HB = Brauer(HT, p)
            a = nu(G.n, p)
            assert nu(H.n, p) == a, "subgroup must contain a Sylow subgroup"
            # a Sylow p-subgroup of H
            P = sylow(H, p)
            pset = {G.index[x] for x in P}
            ti = all(
                len(pset & {G.conj(g, y) for y in pset}) == 1
                for g in range(G.n)
                if G.elems[g] not in hset
            )
            N = G.normalizer(P)
            contains_norm = set(N.elems) <= hset
            cyclic = any(G.order_of[G.index[x]] == len(P) for x in P)
            cyclic_norm = False
            if cyclic and len(P) > 1:
                p1 = [x for x in P if G.order_of[G.index[x]] == p][0]
                P1 = G.subgroup([p1]).elems
                cyclic_norm = set(G.normalizer(P1).elems) == hset
            cont = []
            for c in range(len(T.classes)):
                if ppart(T.orders[c], p)[1] != 1:
                    continue
                for x in T.classes[c]:
                    if set(G.centralizer(x).elems) <= hset:
                        cont.append(c)
                        break
            corr = {}
            if contains_norm:
                res = Residue(T.exponent, p)
                full_blocks = [b for b in range(len(HB.blocks)) if HB.blocks[b][0] == a]
                raw = brauer_correspondent(res, HB, fusion, self.brauer[p], len(T.classes))
                for b in full_blocks:
                    corr[raw[b]] = b
            data = HB.to_json()
            data.update(
                {
                    "ti": ti,
                    "contains_normalizer": contains_norm,
                    "cyclic_normalizer": cyclic_norm,
                    "contains_centralizer_of": cont,
                    "correspondent_block": {str(k): v for k, v in sorted(corr.items())},
                }
            )
            entry["primes"][str(p)] = data
        return entry

    def to_json(self):
        T = self.T
        out = {"format": 1}
        out.update(T.to_json())
        out["primes"] = {}
        for p in self.primes:
            data = self.brauer[p].to_json()
            data["sections"] = [
                self.section(p, c) for c in range(len(T.classes)) if ppart(T.orders[c], p)[1] == 1
            ]
            out["primes"][str(p)] = data
        out["subgroups"] = [self.subgroup(*s) for s in self.subgroups]
        return out


def sylow(H, p):
    a = nu(H.n, p)
    target = p ** a
    pel = [x for x in H.elems if ppart(H.order_of[H.index[x]], p)[1] == 1]
    # grow a p-subgroup greedily; small groups make this cheap
    best = [H.ident]
    grown = True
    while grown and len(best) < target:
        grown = False
        for x in pel:
            if x in best:
                continue
            cand = H.subgroup(set(best) | {x}).elems
            if ppart(len(cand), p)[1] == 1:
                best = cand
                grown = True
    assert len(best) == target, (H.n, p)
    return best


def build_groups():
    S = lambda n, *c: perm(n, *c)
    groups = {}
    groups["C4"] = (Group.generate([S(4, (0, 1, 2, 3))], perm_mul), {}, [("C4", [S(4, (0, 1, 2, 3))], [2])])
    groups["S3"] = (
        Group.generate([S(3, (0, 1)), S(3, (0, 1, 2))], perm_mul),
        {},
        [("C2", [S(3, (0, 1))], [2])],
    )
    groups["D8"] = (Group.generate([S(4, (0, 1, 2, 3)), S(4, (1, 3))], perm_mul), {}, [])
    q_i = (0, 2, 1, 0)  # [[0,-1],[1,0]]
    q_j = (1, 1, 1, 2)  # [[1,1],[1,-1]]
    groups["Q8"] = (Group.generate([q_i, q_j], mat_mul), {}, [])
    groups["A4"] = (
        Group.generate([S(4, (0, 1, 2)), S(4, (1, 2, 3))], perm_mul),
        {},
        [("C3", [S(4, (0, 1, 2))], [3])],
    )
    t = (1, 1, 0, 1)
    groups["SL(2,3)"] = (
        Group.generate([t, (1, 0, 1, 1)], mat_mul),
        {},
        [("C6", [t, (2, 0, 0, 2)], [3])],
    )
    groups["S4"] = (
        Group.generate([S(4, (0, 1)), S(4, (0, 1, 2, 3))], perm_mul),
        {},
        [("S3", [S(4, (0, 1, 2)), S(4, (0, 1))], [3]), ("D8", [S(4, (0, 1, 2, 3)), S(4, (0, 2))], [2])],
    )
    a5_combos = {
        2: [[1, 0, 0, 0, 0], [-1, 1, 0, 0, 0], [-1, 0, 1, 0, 0], [0, 0, 0, 1, 0]],
        3: [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]],
        5: [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 0, 0, 1]],
    }
    groups["A5"] = (
        Group.generate([S(5, (0, 1, 2)), S(5, (0, 1, 2, 3, 4))], perm_mul),
        a5_combos,
        [
            ("D10", [S(5, (0, 1, 2, 3, 4)), S(5, (1, 4), (2, 3))], [5]),
            ("A4", [S(5, (0, 1, 2)), S(5, (1, 2, 3))], [2]),
            ("S3", [S(5, (0, 1, 2)), S(5, (0, 1), (3, 4))], [3]),
        ],
    )
    groups["D10"] = (
        Group.generate([S(5, (0, 1, 2, 3, 4)), S(5, (1, 4), (2, 3))], perm_mul),
        {},
        [("C2", [S(5, (1, 4), (2, 3))], [2])],
    )
    groups["F20"] = (
        Group.generate([S(5, (0, 1, 2, 3, 4)), S(5, (1, 2, 4, 3))], perm_mul),
        {},
        [("C4", [S(5, (1, 2, 4, 3))], [2])],
    )
    return groups


FIXTURES = {
    "C2": lambda: (Group.generate([perm(2, (0, 1))], perm_mul), [2]),
    "C3_p2": lambda: (Group.generate([perm(3, (0, 1, 2))], perm_mul), [2]),
    "S3_p5": lambda: (Group.generate([perm(3, (0, 1)), perm(3, (0, 1, 2))], perm_mul), [5]),
}


def write(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data")
    ap.add_argument("--fixtures", default="crates/core/tests/fixtures")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    manifest = {"format": 1, "groups": []}
    for name, (G, combos, subs) in build_groups().items():
        primes = sorted(factor(G.n))
        ex = Exporter(name, G, primes, combos, subs)
        obj = ex.to_json()
        fname = name.replace("(", "_").replace(")", "").replace(",", "_") + ".json"
        write(os.path.join(args.out, fname), obj)
        manifest["groups"].append(
            {
                "group": name,
                "file": fname,
                "primes": primes,
                "subgroups": [
                    {
                        "name": s["name"],
                        "primes": [int(q) for q in s["primes"]],
                        "ti": {q: d["ti"] for q, d in s["primes"].items()},
                    }
                    for s in obj["subgroups"]
                ],
            }
        )
        print("wrote", fname)
    write(os.path.join(args.out, "manifest.json"), manifest)
    os.makedirs(args.fixtures, exist_ok=True)
    for label, build in FIXTURES.items():
        G, primes = build()
        ex = Exporter(label.split("_")[0], G, primes, {}, [])
        write(os.path.join(args.fixtures, label + ".json"), ex.to_json())
        print("wrote fixture", label)


if __name__ == "__main__":
    main()
