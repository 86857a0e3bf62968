"""Independent reference computations used only by the tests.

``WordBk`` multiplies words in the generators of B_k by explicit rewriting,
without any of the sign bookkeeping in the library.  Dense linear algebra is
delegated to sympy.
"""

from itertools import combinations

import sympy


class WordBk:
    def __init__(self, k):
        self.k = k
        subsets = sorted(c for m in range(k + 1) for c in combinations(range(k), m))
        self.basis = [(S, r) for S in subsets for r in (0, 1)]
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)

    @staticmethod
    def word(S, r):
        return tuple(("x", i) for i in S) + ((("g",),) if r else ())

    def normal_form(self, word):
        """Rewrite a word to ``{(S, r): coeff}`` using only the defining relations."""
        todo = {tuple(word): 1}
        done = {}
        while todo:
            w, c = todo.popitem()
            for pos in range(len(w) - 1):
                a, b = w[pos], w[pos + 1]
                rest_l, rest_r = w[:pos], w[pos + 2:]
                if a == ("g",) and b == ("g",):
                    new, sign = rest_l + rest_r, 1
                elif a == ("g",) and b[0] == "x":
                    new, sign = rest_l + (b, a) + rest_r, -1
                elif a[0] == "x" and b[0] == "x" and a[1] == b[1]:
                    new, sign = None, 0
                elif a[0] == "x" and b[0] == "x" and a[1] > b[1]:
                    new, sign = rest_l + (b, a) + rest_r, -1
                else:
                    continue
                if sign:
                    todo[new] = todo.get(new, 0) + sign * c
                    if not todo[new]:
                        del todo[new]
                break
            else:
                S = tuple(l[1] for l in w if l[0] == "x")
                r = sum(1 for l in w if l == ("g",)) % 2
                done[(S, r)] = done.get((S, r), 0) + c
        return {self.index[b]: c for b, c in done.items() if c}

    def product(self, i, j):
        return self.normal_form(self.word(*self.basis[i]) + self.word(*self.basis[j]))

    def mult_table(self):
        return {(i, j): self.product(i, j) for i in range(self.dim) for j in range(self.dim)}

    def tensor_product(self, u, v):
        """Product in B_k (x) B_k of elements given as {(i, j): c}."""
        out = {}
        for (a, b), c in u.items():
            for (p, q), e in v.items():
                for x, s in self.product(a, p).items():
                    for y, t in self.product(b, q).items():
                        out[(x, y)] = out.get((x, y), 0) + c * e * s * t
        return {k: v for k, v in out.items() if v}

    def coproduct(self, idx):
        """Delta of a basis monomial as the product of the generator coproducts."""
        S, r = self.basis[idx]
        one = self.index[((), 0)]
        g = self.index[((), 1)]
        out = {(one, one): 1}
        for s in S:
            x = self.index[((s,), 0)]
            out = self.tensor_product(out, {(one, x): 1, (x, g): 1})
        if r:
            out = self.tensor_product(out, {(g, g): 1})
        return out


def dense(M):
    return sympy.Matrix(M.rows, M.cols, lambda i, j: M[i, j])


def nullity(rows, ncols):
    if not rows:
        return ncols
    return ncols - sympy.Matrix(rows).rank()
