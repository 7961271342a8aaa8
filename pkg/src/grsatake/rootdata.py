"""Root systems, lattices, pairings and Weyl combinatorics for finite
semisimple types.

Conventions
-----------
* Weights carry integer coordinates in the fundamental-weight basis
  (so ``coords[i]`` is the pairing with the i-th simple coroot).
* Coweights carry integer coordinates in the fundamental-coweight basis
  (so ``coords[i]`` is the pairing of the i-th simple root with them).
  The coweight lattice is the full fundamental-coweight lattice
  (adjoint-type convention), so minuscule coweights exist.
* The Cartan matrix entry ``cartan[i][j]`` is the pairing of the i-th
  simple root with the j-th simple coroot.
* For G2 the first simple coroot is the long one:
  ``cartan = [[2, -1], [-3, 2]]``.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg

_MAX_POSITIVE_ROOTS = 200  # enough for rank <= 6; non-finite input diverges fast


class InvalidDescriptorError(ValueError):
    """Raised when a type descriptor or Cartan matrix is not finite type."""


class _CoordTuple:
    """Hash-cached coordinate vector; subclassed by Weight and Coweight.

    Plain class with __slots__ rather than a dataclass: these sit in the
    innermost loops of every construction.
    """

    __slots__ = ("coords", "_hash")

    def __init__(self, coords):
        self.coords = tuple(coords)
        self._hash = hash((type(self).__name__, self.coords))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return type(other) is type(self) and self.coords == other.coords

    def __lt__(self, other):
        return self.coords < other.coords

    def __le__(self, other):
        return self.coords <= other.coords

    def __gt__(self, other):
        return self.coords > other.coords

    def __ge__(self, other):
        return self.coords >= other.coords

    def __add__(self, other):
        return type(self)(tuple(a + b
                                for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return type(self)(tuple(a - b
                                for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return type(self)(tuple(-a for a in self.coords))

    def scale(self, c):
        return type(self)(tuple(c * a for a in self.coords))

    def is_zero(self):
        return not any(self.coords)

    def __repr__(self):
        return "%s(coords=%r)" % (type(self).__name__, self.coords)


class Weight(_CoordTuple):
    __slots__ = ()


class Coweight(_CoordTuple):
    __slots__ = ()


@dataclass(frozen=True)
class PositiveRoot:
    """A positive root together with its coroot.

    ``root_coords`` are simple-root coordinates, ``coroot_coords`` are
    simple-coroot coordinates.
    """
    root_coords: tuple
    coroot_coords: tuple


_IRREDUCIBLE_LETTERS = "ABCDEFG"


def _cartan_for_type(letter, n):
    def base(size):
        m = [[0] * size for _ in range(size)]
        for i in range(size):
            m[i][i] = 2
            if i + 1 < size:
                m[i][i + 1] = -1
                m[i + 1][i] = -1
        return m

    if letter == "A" and n >= 1:
        return base(n)
    if letter == "B" and n >= 2:
        m = base(n)
        m[n - 2][n - 1] = -2  # last simple root short
        return m
    if letter == "C" and n >= 2:
        m = base(n)
        m[n - 1][n - 2] = -2  # last simple root long
        return m
    if letter == "D" and n >= 3:
        m = base(n)
        m[n - 2][n - 1] = 0
        m[n - 1][n - 2] = 0
        m[n - 3][n - 1] = -1
        m[n - 1][n - 3] = -1
        return m
    if letter == "E" and n in (6, 7, 8):
        m = base(n - 1)  # chain on nodes 1..n-1, node n hangs off node 3
        for row in m:
            row.append(0)
        m.append([0] * n)
        m[n - 1][n - 1] = 2
        m[2][n - 1] = -1
        m[n - 1][2] = -1
        return m
    if letter == "F" and n == 4:
        m = base(4)
        m[1][2] = -2
        m[2][1] = -1
        return m
    if letter == "G" and n == 2:
        return [[2, -1], [-3, 2]]  # first simple coroot long
    raise InvalidDescriptorError("unknown Dynkin type %s%d" % (letter, n))


def _parse_label(label):
    blocks = []
    for part in label.split("x"):
        part = part.strip()
        if len(part) < 2 or part[0] not in _IRREDUCIBLE_LETTERS or not part[1:].isdigit():
            raise InvalidDescriptorError("bad type descriptor %r" % (part,))
        blocks.append(_cartan_for_type(part[0], int(part[1:])))
    return blocks


def _block_partition(cartan):
    """Connected components of the Dynkin diagram, as index lists."""
    n = len(cartan)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            i = stack.pop()
            for j in range(n):
                if not seen[j] and cartan[i][j] != 0:
                    seen[j] = True
                    comp.append(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _symmetrizer(cartan, block):
    """Positive rationals d_i with d_i * a_ij = d_j * a_ji on the block."""
    d = {block[0]: Fraction(1)}
    stack = [block[0]]
    while stack:
        i = stack.pop()
        for j in block:
            if j in d or cartan[i][j] == 0:
                continue
            d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
            stack.append(j)
    for i in block:
        for j in block:
            if d[i] * cartan[i][j] != d[j] * cartan[j][i]:
                raise InvalidDescriptorError(
                    "Cartan block %s is not symmetrizable" % (block,))
    return d


def _check_finite_block(cartan, block):
    d = _symmetrizer(cartan, block)
    sym = [[d[i] * cartan[i][j] for j in block] for i in block]
    # positive definite iff all leading principal minors are positive
    n = len(block)
    for k in range(1, n + 1):
        sub = [row[:k] for row in sym[:k]]
        if _det(sub) <= 0:
            raise InvalidDescriptorError(
                "Cartan block on indices %s is not of finite type" % (block,))


def _det(m):
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        pr = None
        for r in range(c, n):
            if a[r][c]:
                pr = r
                break
        if pr is None:
            return Fraction(0)
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


class RootDatum:
    """Cartan data plus enumerated positive roots and coroots."""

    def __init__(self, cartan, type_label=None):
        cartan = [list(map(int, row)) for row in cartan]
        n = len(cartan)
        if any(len(row) != n for row in cartan):
            raise InvalidDescriptorError("Cartan matrix must be square")
        for i in range(n):
            if cartan[i][i] != 2:
                raise InvalidDescriptorError("diagonal entry %d is not 2" % i)
            for j in range(n):
                if i != j:
                    if cartan[i][j] > 0:
                        raise InvalidDescriptorError(
                            "positive off-diagonal entry at (%d,%d)" % (i, j))
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                        raise InvalidDescriptorError(
                            "asymmetric zero pattern at (%d,%d)" % (i, j))
        self.rank = n
        self.cartan = tuple(tuple(row) for row in cartan)
        self.blocks = _block_partition(cartan)
        for block in self.blocks:
            _check_finite_block(cartan, block)
        self.type_label = type_label or "rank%d" % n
        self.positive_roots = self._enumerate_positive_roots()
        self._symmetrizer_dual = self._dual_symmetrizer()
        self._cartan_inv = None

    # -- construction helpers ------------------------------------------------

    def _enumerate_positive_roots(self):
        """Closure of the simple (root, coroot) pairs under simple reflections."""
        n = self.rank
        a = self.cartan
        simple = []
        for i in range(n):
            rc = tuple(1 if j == i else 0 for j in range(n))
            simple.append(PositiveRoot(rc, rc))
        seen = {(r.root_coords, r.coroot_coords) for r in simple}
        queue = list(simple)
        out = list(simple)
        while queue:
            pr = queue.pop()
            for i in range(n):
                # (beta, alpha_i^vee) and (alpha_i, beta^vee)
                p_r = sum(k * a[j][i] for j, k in enumerate(pr.root_coords))
                p_c = sum(a[i][j] * c for j, c in enumerate(pr.coroot_coords))
                nr = tuple(k - (p_r if j == i else 0)
                           for j, k in enumerate(pr.root_coords))
                nc = tuple(c - (p_c if j == i else 0)
                           for j, c in enumerate(pr.coroot_coords))
                if all(x >= 0 for x in nr) and (nr, nc) not in seen:
                    seen.add((nr, nc))
                    npr = PositiveRoot(nr, nc)
                    out.append(npr)
                    queue.append(npr)
                    if len(out) > _MAX_POSITIVE_ROOTS:
                        raise InvalidDescriptorError(
                            "positive-root enumeration did not terminate")
        out.sort(key=lambda r: (sum(r.root_coords), r.root_coords))
        return tuple(out)

    def _dual_symmetrizer(self):
        """Diagonal d of the Weyl-invariant form on the coweight space.

        With d from the symmetrizer of the Cartan matrix itself, the form
        is (alpha_i^vee, alpha_j^vee) = d_j * cartan[j][i]; normalized so
        that short coroots have squared length 2.
        """
        d = [None] * self.rank
        for block in self.blocks:
            db = _symmetrizer([list(row) for row in self.cartan], block)
            m = min(db.values())
            for i in block:
                d[i] = db[i] / m
        return tuple(d)

    def coweight_inner(self, a, b):
        """Weyl-invariant inner product on the coweight space (exact)."""
        cb = self.coroot_coordinates(b)
        d = self._symmetrizer_dual
        return sum(cb[j] * d[j] * a.coords[j] for j in range(self.rank))

    # -- basic conversions ---------------------------------------------------

    def simple_root(self, i):
        """The i-th simple root as a Weight (fundamental-weight coords)."""
        return Weight(tuple(self.cartan[i]))

    def simple_coroot(self, i):
        """The i-th simple coroot as a Coweight."""
        return Coweight(tuple(self.cartan[j][i] for j in range(self.rank)))

    def fundamental_weight(self, i):
        return Weight(tuple(1 if j == i else 0 for j in range(self.rank)))

    def fundamental_coweight(self, i):
        return Coweight(tuple(1 if j == i else 0 for j in range(self.rank)))

    def zero_coweight(self):
        return Coweight((0,) * self.rank)

    def root_weight(self, pr):
        """Weight coordinates of a positive root."""
        w = [0] * self.rank
        for i, k in enumerate(pr.root_coords):
            if k:
                for j in range(self.rank):
                    w[j] += k * self.cartan[i][j]
        return Weight(tuple(w))

    def coroot_coweight(self, pr):
        """Coweight coordinates of the coroot of a positive root."""
        c = [0] * self.rank
        for i, k in enumerate(pr.coroot_coords):
            if k:
                for j in range(self.rank):
                    c[j] += k * self.cartan[j][i]
        return Coweight(tuple(c))

    @property
    def positive_coroots(self):
        return tuple(self.coroot_coweight(pr) for pr in self.positive_roots)

    def coroot_coordinates(self, c):
        """Express a coweight in simple-coroot coordinates (exact rationals)."""
        if self._cartan_inv is None:
            a = [[Fraction(x) for x in row] for row in self.cartan]
            self._cartan_inv = linalg.solve(a, linalg.identity(self.rank))
        return tuple(sum(self._cartan_inv[i][j] * c.coords[j]
                         for j in range(self.rank)) for i in range(self.rank))

    # -- pairing and reflections ---------------------------------------------

    def pairing(self, w, c):
        """Natural pairing of a weight with a coweight.

        Exact; returns an int whenever the value is integral (always the
        case when ``w`` lies in the root lattice).
        """
        if len(w.coords) != self.rank or len(c.coords) != self.rank:
            raise ValueError("rank mismatch in pairing")
        cc = self.coroot_coordinates(c)
        val = sum(m * x for m, x in zip(w.coords, cc))
        if isinstance(val, Fraction):
            if val.denominator == 1:
                return int(val)
            return val
        return val

    def root_pairing(self, pr, c):
        """Pairing of a positive root with a coweight; always an integer."""
        return sum(k * c.coords[i] for i, k in enumerate(pr.root_coords))

    def reflect_weight(self, i, w):
        m = w.coords[i]
        return Weight(tuple(x - m * self.cartan[i][j]
                            for j, x in enumerate(w.coords)))

    def reflect_coweight(self, i, c):
        n = c.coords[i]
        return Coweight(tuple(x - n * self.cartan[j][i]
                              for j, x in enumerate(c.coords)))

    # -- Weyl combinatorics --------------------------------------------------

    def weyl_orbit(self, c):
        """Orbit of a coweight under the Weyl group (breadth-first closure)."""
        seen = {c}
        queue = [c]
        while queue:
            x = queue.pop()
            for i in range(self.rank):
                y = self.reflect_coweight(i, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def weyl_orbit_weights(self, w):
        seen = {w}
        queue = [w]
        while queue:
            x = queue.pop()
            for i in range(self.rank):
                y = self.reflect_weight(i, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def is_dominant(self, c):
        return all(x >= 0 for x in c.coords)

    def dominant_representative(self, c):
        """Reflect until dominant; returns (dominant coweight, was_dominant)."""
        was = self.is_dominant(c)
        x = c
        while True:
            for i in range(self.rank):
                if x.coords[i] < 0:
                    x = self.reflect_coweight(i, x)
                    break
            else:
                return x, was

    def weyl_group_order(self):
        """Order of W, by exhaustive enumeration of its coweight action."""
        gens = []
        for i in range(self.rank):
            gens.append(tuple(self.reflect_coweight(i, self.fundamental_coweight(j))
                              for j in range(self.rank)))

        def apply(g, cols):
            # compose: columns are images of fundamental coweights
            return tuple(Coweight(tuple(sum(col.coords[k] * g[k].coords[m]
                                            for k in range(self.rank))
                                        for m in range(self.rank)))
                         for col in cols)

        ident = tuple(self.fundamental_coweight(j) for j in range(self.rank))
        seen = {ident}
        queue = [ident]
        while queue:
            x = queue.pop()
            for g in gens:
                y = apply(g, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen)

    # -- degrees and Levi ----------------------------------------------------

    def two_rho_pairing(self, c):
        """Sum of the pairings of all positive roots with ``c``.

        Integer by construction; equals twice the pairing of the Weyl
        vector with ``c``.
        """
        return sum(self.root_pairing(pr, c) for pr in self.positive_roots)

    def levi_subdatum(self, i):
        """The rank-1 subsystem on the i-th simple root, with embeddings."""
        if not 0 <= i < self.rank:
            raise ValueError("simple index %d out of range" % i)
        d = _symmetrizer([[self.cartan[a][b] for b in range(self.rank)]
                          for a in range(self.rank)],
                         next(b for b in self.blocks if i in b))
        lengths = {j: v for j, v in d.items()}
        tag = "long" if lengths[i] == max(lengths.values()) else "short"
        return LeviSubdatum(self, i, tag)

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.cartan == other.cartan

    def __hash__(self):
        return hash(self.cartan)

    def __repr__(self):
        return "RootDatum(%s)" % self.type_label


class LeviSubdatum(RootDatum):
    """Rank-1 Levi on one simple root, with maps back into the parent lattices."""

    def __init__(self, parent, index, length_tag):
        super().__init__([[2]], type_label="A1")
        self.parent = parent
        self.index = index
        self.length_tag = length_tag

    def embed_coweight(self, c):
        """Image of a Levi coweight in the parent coweight lattice."""
        return self.parent.simple_coroot(self.index).scale(
            self._levi_coroot_coeff(c))

    def _levi_coroot_coeff(self, c):
        # rank-1 coweight n * omega^vee corresponds to (n/2) alpha^vee
        n = c.coords[0]
        if n % 2:
            raise ValueError("coweight %s is not in the coroot lattice" % (c,))
        return n // 2


def build_root_datum(descriptor):
    """Construct a RootDatum from a type label or an explicit Cartan matrix.

    Labels are irreducible types like ``"A2"`` or ``"G2"`` joined by
    ``"x"``; matrices may be given as nested lists or as a row-major flat
    list of integers.
    """
    if isinstance(descriptor, str):
        blocks = _parse_label(descriptor)
        n = sum(len(b) for b in blocks)
        cartan = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b):
                for j, x in enumerate(row):
                    cartan[off + i][off + j] = x
            off += len(b)
        return RootDatum(cartan, type_label=descriptor)
    if descriptor and not isinstance(descriptor[0], (list, tuple)):
        n2 = len(descriptor)
        n = int(round(n2 ** 0.5))
        if n * n != n2:
            raise InvalidDescriptorError("flat Cartan list has non-square length")
        descriptor = [descriptor[i * n:(i + 1) * n] for i in range(n)]
    return RootDatum(descriptor)
