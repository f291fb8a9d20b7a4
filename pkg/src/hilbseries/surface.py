"""Formal models of the even rational cohomology of a surface.

A SurfaceModel records a graded basis {unit} + {e_1..e_b2} + {pt}, the
intersection Gram matrix on the degree-1 part, and the canonical class.
This is the only surface data the operator calculus consumes.  The two
geometric presets (the plane and the quadric) suffice to pin every
universal series; arbitrary formal models are allowed for robustness
runs.
"""

from .rationals import Q, as_q


def _inverse(mat):
    """Exact inverse of a square rational matrix (Gauss-Jordan)."""
    n = len(mat)
    a = [[as_q(x) for x in row] + [Q(1) if j == i else Q(0) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular intersection matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


class SurfaceModel:
    def __init__(self, name, gram, canonical):
        self.name = name
        self.b2 = len(gram)
        self.gram = tuple(tuple(as_q(x) for x in row) for row in gram)
        for i in range(self.b2):
            for j in range(self.b2):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("intersection matrix must be symmetric")
        self.gram_inv = tuple(tuple(r) for r in _inverse(self.gram))
        self.kvec = tuple(as_q(x) for x in canonical)
        if len(self.kvec) != self.b2:
            raise ValueError("canonical class has wrong length")
        self.euler_number = 2 + self.b2
        self.k_squared = sum(
            self.kvec[i] * self.gram[i][j] * self.kvec[j]
            for i in range(self.b2)
            for j in range(self.b2)
        )
        # Noether: chi(O) = (e + K^2)/12, exact rational for formal models.
        self.chi_o = (self.euler_number + self.k_squared) / Q(12)

    def __repr__(self):
        return "SurfaceModel(%s)" % self.name

    def key(self):
        """Hashable identity used for caching."""
        return (self.name, self.gram, self.kvec)

    def __eq__(self, other):
        return isinstance(other, SurfaceModel) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    # -- classes -----------------------------------------------------
    def cls(self, c0=0, c1=None, c2=0):
        return CohClass(self, c0, c1, c2)

    def unit(self):
        return self.cls(c0=1)

    def pt(self):
        return self.cls(c2=1)

    def e(self, i):
        return self.cls(c1=[1 if j == i else 0 for j in range(self.b2)])

    def canonical_class(self):
        return self.cls(c1=self.kvec)

    def divisor(self, coeffs):
        return self.cls(c1=coeffs)

    def chi_line(self, div):
        """chi of the line bundle with first Chern class div, by
        Riemann-Roch on the surface: (L^2 - L.K)/2 + chi(O)."""
        if isinstance(div, CohClass):
            div = div.c1
        L = self.divisor(div)
        K = self.canonical_class()
        return (L.cup(L).integrate() - L.cup(K).integrate()) / Q(2) + self.chi_o


class CohClass:
    __slots__ = ("model", "c0", "c1", "c2")

    def __init__(self, model, c0=0, c1=None, c2=0):
        self.model = model
        self.c0 = as_q(c0)
        if c1 is None:
            c1 = [0] * model.b2
        self.c1 = tuple(as_q(x) for x in c1)
        if len(self.c1) != model.b2:
            raise ValueError("degree-1 part has wrong length")
        self.c2 = as_q(c2)

    def _check(self, other):
        if not isinstance(other, CohClass) or other.model != self.model:
            raise ValueError("classes on different surface models")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CohClass(
            self.model,
            self.c0 + other.c0,
            [a + b for a, b in zip(self.c1, other.c1)],
            self.c2 + other.c2,
        )

    def __sub__(self, other):
        other = self._check(other)
        return CohClass(
            self.model,
            self.c0 - other.c0,
            [a - b for a, b in zip(self.c1, other.c1)],
            self.c2 - other.c2,
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = as_q(c)
        return CohClass(self.model, self.c0 * c, [x * c for x in self.c1], self.c2 * c)

    def __eq__(self, other):
        return (
            isinstance(other, CohClass)
            and other.model == self.model
            and (self.c0, self.c1, self.c2) == (other.c0, other.c1, other.c2)
        )

    def __hash__(self):
        return hash((self.model, self.c0, self.c1, self.c2))

    def is_zero(self):
        return self.c0 == 0 and self.c2 == 0 and all(x == 0 for x in self.c1)

    def cup(self, other):
        other = self._check(other)
        g = self.model.gram
        mid = sum(
            self.c1[i] * g[i][j] * other.c1[j]
            for i in range(self.model.b2)
            for j in range(self.model.b2)
        )
        return CohClass(
            self.model,
            self.c0 * other.c0,
            [self.c0 * x + other.c0 * y for x, y in zip(other.c1, self.c1)],
            self.c0 * other.c2 + other.c0 * self.c2 + mid,
        )

    def integrate(self):
        """Coefficient of the point class."""
        return self.c2

    def diagonal(self):
        """Kuenneth decomposition of the diagonal pushforward: a list of
        (left, right) class pairs summing to delta(self)."""
        m = self.model
        pairs = []
        basis = [m.unit()] + [m.e(i) for i in range(m.b2)] + [m.pt()]
        duals = (
            [m.pt()]
            + [m.divisor(m.gram_inv[i]) for i in range(m.b2)]
            + [m.unit()]
        )
        for b, bd in zip(basis, duals):
            left = self.cup(b)
            if not left.is_zero():
                pairs.append((left, bd))
        return pairs

    def __repr__(self):
        return "CohClass(%s; %s, %s, %s)" % (self.model.name, self.c0, self.c1, self.c2)


def preset(name):
    if name == "p2":
        return SurfaceModel("p2", [[1]], [-3])
    if name == "p1xp1":
        return SurfaceModel("p1xp1", [[0, 1], [1, 0]], [-2, -2])
    raise ValueError("unknown preset %r" % (name,))


def formal(b2, gram, canonical, name=None):
    if name is None:
        name = "formal-b2=%d" % b2
    if len(gram) != b2:
        raise ValueError("Gram matrix size does not match b2")
    return SurfaceModel(name, gram, canonical)
