#!/usr/bin/env python3
"""Regenerate the bundled group corpus (all groups of order <= 24).

Each group is built from a concrete model as a multiplication table, then
written as {"name", "order", "degree", "generators"} where the generators
are permutations of a faithful action: the natural one for the small
permutation groups, the left regular action otherwise.

    python3 tools/gen_corpus.py corpus/
"""

import itertools
import json
import os
import sys


class Table:
    def __init__(self, mul):
        # mul[i][j] = index of e_i * e_j, identity is index 0
        self.mul = mul
        self.n = len(mul)

    def order_of(self, g):
        k, x = 1, g
        while x != 0:
            x = self.mul[x][g]
            k += 1
        return k

    def closure(self, gens):
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.mul[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def generators(self):
        elems = sorted(range(1, self.n), key=lambda g: (-self.order_of(g), g))
        gens, span = [], {0}
        for g in elems:
            if g not in span:
                gens.append(g)
                span = self.closure(gens)
                if len(span) == self.n:
                    break
        return gens


def from_elements(elements, mul, identity):
    elements = list(elements)
    elements.remove(identity)
    elements = [identity] + elements
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return Table(table)


def generate(gens, mul, identity):
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def cyclic(n):
    return from_elements(range(n), lambda a, b: (a + b) % n, 0)


def direct(a, b):
    elems = [(i, j) for i in range(a.n) for j in range(b.n)]
    return from_elements(elems, lambda x, y: (a.mul[x[0]][y[0]], b.mul[x[1]][y[1]]), (0, 0))


def semidirect(normal, quotient, act):
    """normal x| quotient where act(q) is an automorphism of `normal` given as a list."""
    acts = [act(q) for q in range(quotient.n)]

    def mul(x, y):
        n1, q1 = x
        n2, q2 = y
        return (normal.mul[n1][acts[q1][n2]], quotient.mul[q1][q2])

    elems = [(i, j) for i in range(normal.n) for j in range(quotient.n)]
    return from_elements(elems, mul, (0, 0))


def cyclic_power_action(m, n, r):
    """Action of C_n on C_m where the generator acts by x -> x^r."""
    assert pow(r, n, m) == 1 % m
    return lambda q: [(x * pow(r, q, m)) % m for x in range(m)]


def cyc_semidirect(m, n, r):
    return semidirect(cyclic(m), cyclic(n), cyclic_power_action(m, n, r))


def dicyclic(n):
    # elements (k, j) = a^k x^j, a of order 2n, x^2 = a^n, x a x^-1 = a^-1
    def mul(p, q):
        k1, j1 = p
        k2, j2 = q
        k = k1 + (k2 if j1 == 0 else -k2)
        j = j1 + j2
        if j == 2:
            k += n
            j = 0
        return (k % (2 * n), j)

    elems = [(k, j) for k in range(2 * n) for j in range(2)]
    return from_elements(elems, mul, (0, 0))


def perm_mul(g, h):
    return tuple(g[h[i]] for i in range(len(h)))


def perm_group(gens):
    ident = tuple(range(len(gens[0])))
    return from_elements(generate(gens, perm_mul, ident), perm_mul, ident)


def abelian_action(orders, images):
    """Automorphism of prod C_{orders} sending basis vector i to images[i]; returns an
    action of C_2 (or any cyclic group, applied iteratively) on the direct product table."""
    base = direct_many([cyclic(o) for o in orders])
    coords = list(itertools.product(*[range(o) for o in orders]))
    index = {c: i for i, c in enumerate(coords)}
    # direct_many keeps the lexicographic coordinate ordering
    def apply(c):
        out = [0] * len(orders)
        for i, e in enumerate(c):
            for t, o in enumerate(orders):
                out[t] = (out[t] + e * images[i][t]) % o
        return tuple(out)

    auto = [index[apply(c)] for c in coords]
    return base, auto


def direct_many(tables):
    # lexicographic coordinates, identity first
    coords = list(itertools.product(*[range(t.n) for t in tables]))

    def mul(x, y):
        return tuple(t.mul[a][b] for t, a, b in zip(tables, x, y))

    index = {c: i for i, c in enumerate(coords)}
    table = [[index[mul(a, b)] for b in coords] for a in coords]
    return Table(table)


def abelian_by_c(orders, images, n):
    base, auto = abelian_action(orders, images)

    def act(q):
        perm = list(range(base.n))
        for _ in range(q):
            perm = [auto[p] for p in perm]
        return perm

    return semidirect(base, cyclic(n), act)


def dihedral(order):
    m = order // 2
    return cyc_semidirect(m, 2, m - 1) if m > 2 else direct(cyclic(2), cyclic(2))


def sl23():
    def mul(a, b):
        return (
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        )

    elems = [m for m in itertools.product(range(3), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % 3 == 1]
    return from_elements(elems, mul, (1, 0, 0, 1))


def c3_by_d8():
    d8 = dihedral(8)
    # sign character of D8 with kernel the Klein four group not containing the rotation
    rot = [g for g in range(d8.n) if d8.order_of(g) == 4][0]
    order2 = [g for g in range(1, d8.n) if d8.order_of(g) == 2]
    center = [g for g in order2 if all(d8.mul[g][h] == d8.mul[h][g] for h in range(d8.n))][0]
    refl = [g for g in order2 if g != center][0]
    kernel = d8.closure([center, refl])
    assert len(kernel) == 4 and rot not in kernel
    return semidirect(cyclic(3), d8, lambda q: [x if q in kernel else (-x) % 3 for x in range(3)])


def regular_generators(table):
    gens = table.generators()
    return [[table.mul[s][x] for x in range(table.n)] for s in gens]


def perm_entry(name, degree, gens):
    return {"name": name, "degree": degree, "generators": [list(g) for g in gens]}


def corpus():
    c = cyclic
    out = []

    def add(name, table):
        out.append((name, table, None))

    def add_perm(name, gens):
        out.append((name, perm_group([tuple(g) for g in gens]), gens))

    out.append(("trivial", cyclic(1), None))
    add("c2", c(2))
    add("c3", c(3))
    add("c4", c(4))
    add_perm("v4", [[1, 0, 3, 2], [2, 3, 0, 1]])
    add("c5", c(5))
    add("c6", c(6))
    add_perm("s3", [[1, 2, 0], [1, 0, 2]])
    add("c7", c(7))
    add("c8", c(8))
    add("c4xc2", direct(c(4), c(2)))
    add("c2xc2xc2", direct_many([c(2), c(2), c(2)]))
    add_perm("d8", [[1, 2, 3, 0], [3, 2, 1, 0]])
    add("q8", dicyclic(2))
    add("c9", c(9))
    add("c3xc3", direct(c(3), c(3)))
    add("c10", c(10))
    add("d10", dihedral(10))
    add("c11", c(11))
    add("c12", c(12))
    add("c6xc2", direct(c(6), c(2)))
    add("d12", dihedral(12))
    add_perm("a4", [[1, 2, 0, 3], [1, 0, 3, 2]])
    add("dic12", dicyclic(3))
    add("c13", c(13))
    add("c14", c(14))
    add("d14", dihedral(14))
    add("c15", c(15))
    add("c16", c(16))
    add("c4xc4", direct(c(4), c(4)))
    add("c8xc2", direct(c(8), c(2)))
    add("c4xc2xc2", direct_many([c(4), c(2), c(2)]))
    add("c2xc2xc2xc2", direct_many([c(2)] * 4))
    add("d16", dihedral(16))
    add("q16", dicyclic(4))
    add("sd16", cyc_semidirect(8, 2, 3))
    add("m16", cyc_semidirect(8, 2, 5))
    add("c4sc4", cyc_semidirect(4, 4, 3))
    add("c2xd8", direct(c(2), dihedral(8)))
    add("c2xq8", direct(c(2), dicyclic(2)))
    # (C4 x C2) x| C2 with a -> ab, b -> b
    add("c4xc2sc2", abelian_by_c([4, 2], [[1, 1], [0, 1]], 2))
    # central product C4 o D8: (C4 x C2) x| C2 with a -> a, b -> a^2 b
    add("c4od8", abelian_by_c([4, 2], [[1, 0], [2, 1]], 2))
    add("c17", c(17))
    add("c18", c(18))
    add("c6xc3", direct(c(6), c(3)))
    add("d18", dihedral(18))
    add("c3xs3", direct(c(3), dihedral(6)))
    add("c3xc3sc2", abelian_by_c([3, 3], [[2, 0], [0, 2]], 2))
    add("c19", c(19))
    add("c20", c(20))
    add("c10xc2", direct(c(10), c(2)))
    add("d20", dihedral(20))
    add("dic20", dicyclic(5))
    add("f20", cyc_semidirect(5, 4, 2))
    add("c21", c(21))
    add("c7sc3", cyc_semidirect(7, 3, 2))
    add("c22", c(22))
    add("d22", dihedral(22))
    add("c23", c(23))
    add("c24", c(24))
    add("c12xc2", direct(c(12), c(2)))
    add("c6xc2xc2", direct_many([c(6), c(2), c(2)]))
    add_perm("s4", [[1, 2, 3, 0], [1, 0, 2, 3]])
    add("sl23", sl23())
    add("c3sc8", cyc_semidirect(3, 8, 2))
    add("dic24", dicyclic(6))
    add("c4xs3", direct(c(4), dihedral(6)))
    add("d24", dihedral(24))
    add("c2xdic12", direct(c(2), dicyclic(3)))
    add("c3sd8", c3_by_d8())
    add("c3xd8", direct(c(3), dihedral(8)))
    add("c3xq8", direct(c(3), dicyclic(2)))
    add("c2xa4", direct(c(2), perm_group([(1, 2, 0, 3), (1, 0, 3, 2)])))
    add("c2xd12", direct(c(2), dihedral(12)))
    return out


def main(dest):
    os.makedirs(dest, exist_ok=True)
    index = []
    for name, table, perms in corpus():
        if perms is not None:
            entry = perm_entry(name, len(perms[0]), perms)
        elif table.n == 1:
            entry = perm_entry(name, 1, [])
        else:
            entry = perm_entry(name, table.n, regular_generators(table))
        entry["order"] = table.n
        with open(os.path.join(dest, name + ".json"), "w") as f:
            json.dump({k: entry[k] for k in ("name", "order", "degree", "generators")}, f, separators=(",", ":"))
            f.write("\n")
        index.append({"name": name, "order": table.n})
    with open(os.path.join(dest, "index.json"), "w") as f:
        json.dump({"version": 1, "groups": index}, f, indent=1)
        f.write("\n")
    print(f"wrote {len(index)} groups to {dest}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "corpus")
