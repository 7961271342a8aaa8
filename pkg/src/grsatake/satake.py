"""Weight-graded modules with Chevalley operator families.

A GradedModule is a coweight-graded exact-rational vector space whose
cohomological degree at weight mu is the sum of the pairings of mu with
all positive roots.  The raising operators e_i shift weights by the i-th
simple coroot, the lowering operators f_i by its negative, and h_i acts
on the mu block as the scalar pairing of the i-th simple root with mu.

Everything is exact: matrices are Fraction-valued and every identity is
checked with zero tolerance.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, rootdata
from .rootdata import Coweight, RootDatum


class LefschetzError(ValueError):
    """E^k fails to be a bijection between opposite h-eigenspaces."""


class DimensionCapExceeded(RuntimeError):
    """An oracle construction would exceed the configured dimension cap."""


DEFAULT_CAP = 400


@dataclass
class WeightedOperator:
    """A weight-shifting block operator.

    ``blocks`` maps a source coweight to the matrix of the block into the
    shifted target weight; absent blocks are zero.
    """
    shift: Coweight
    blocks: dict

    def block(self, mu):
        return self.blocks.get(mu)

    def apply_block(self, mu, vec):
        """Image of a coordinate vector at weight mu, or None if zero."""
        b = self.blocks.get(mu)
        if b is None:
            return None
        return linalg.mat_vec(b, vec)


def _clean_blocks(blocks, spaces, shift):
    out = {}
    for mu, mat in blocks.items():
        if mu not in spaces:
            continue
        tgt = Coweight(tuple(a + b for a, b in zip(mu.coords, shift.coords)))
        if tgt not in spaces:
            if not linalg.is_zero(mat):
                raise ValueError("operator block out of %s targets a missing weight"
                                 % (mu,))
            continue
        if linalg.is_zero(mat):
            continue
        out[mu] = mat
    return out


class GradedModule:
    """Weight-graded module with e_i / f_i / h_i operator families."""

    def __init__(self, datum, spaces, e_ops, f_ops):
        self.datum = datum
        self.spaces = {mu: d for mu, d in spaces.items() if d > 0}
        self.e = []
        self.f = []
        for i in range(datum.rank):
            av = datum.simple_coroot(i)
            self.e.append(WeightedOperator(
                av, _clean_blocks(e_ops[i].blocks, self.spaces, av)))
            self.f.append(WeightedOperator(
                -av, _clean_blocks(f_ops[i].blocks, self.spaces, -av)))

    # -- readouts ------------------------------------------------------------

    def dim(self, mu):
        return self.spaces.get(mu, 0)

    @property
    def total_dim(self):
        return sum(self.spaces.values())

    def degree(self, mu):
        return self.datum.two_rho_pairing(mu)

    def weights(self):
        return sorted(self.spaces)

    def h_operator(self, i):
        # every weight gets a block (including scalar 0) so the operator
        # fully describes the underlying graded space
        blocks = {}
        for mu, d in self.spaces.items():
            blocks[mu] = linalg.mat_scale(mu.coords[i], linalg.identity(d))
        return WeightedOperator(self.datum.zero_coweight(), blocks)

    @property
    def h(self):
        return [self.h_operator(i) for i in range(self.datum.rank)]


def character_of(module):
    """Weight multiplicities of a module, as a dict Coweight -> int."""
    return dict(module.spaces)


def trivial_module(datum):
    zero = datum.zero_coweight()
    empty = [WeightedOperator(datum.simple_coroot(i), {}) for i in range(datum.rank)]
    emptyf = [WeightedOperator(-datum.simple_coroot(i), {}) for i in range(datum.rank)]
    return GradedModule(datum, {zero: 1}, empty, emptyf)


# ---------------------------------------------------------------------------
# tensor product with the primitive coproduct
# ---------------------------------------------------------------------------

def _tensor_layout(m1, m2):
    """For each combined weight: ordered (mu, nu) pairs with index offsets."""
    layout = {}
    for mu, d1 in m1.spaces.items():
        for nu, d2 in m2.spaces.items():
            lam = mu + nu
            layout.setdefault(lam, []).append((mu, nu))
    offsets = {}
    dims = {}
    for lam, pairs in layout.items():
        pairs.sort()
        off = 0
        for mu, nu in pairs:
            offsets[(lam, mu, nu)] = off
            off += m1.dim(mu) * m2.dim(nu)
        dims[lam] = off
    for lam in layout:
        layout[lam] = list(layout[lam])
    return layout, offsets, dims


def tensor_module(m1, m2):
    """Tensor product; e_i, f_i, h_i act as x (x) 1 + 1 (x) x."""
    if m1.datum != m2.datum:
        raise ValueError("tensor of modules over different data")
    datum = m1.datum
    layout, offsets, dims = _tensor_layout(m1, m2)

    def coproduct(ops1, ops2, i, shift):
        blocks = {}
        for lam, pairs in layout.items():
            tgt = lam + shift
            if dims.get(tgt, 0) == 0:
                continue
            mat = None
            for mu, nu in pairs:
                d1, d2 = m1.dim(mu), m2.dim(nu)
                src_off = offsets[(lam, mu, nu)]
                b1 = ops1[i].blocks.get(mu)
                if b1 is not None and (lam + shift, mu + shift, nu) in offsets:
                    if mat is None:
                        mat = linalg.zeros(dims[tgt], dims[lam])
                    t_off = offsets[(tgt, mu + shift, nu)]
                    kb = linalg.kron(b1, linalg.identity(d2))
                    for r in range(len(kb)):
                        row = mat[t_off + r]
                        for c in range(len(kb[0])):
                            if kb[r][c]:
                                row[src_off + c] += kb[r][c]
                b2 = ops2[i].blocks.get(nu)
                if b2 is not None and (lam + shift, mu, nu + shift) in offsets:
                    if mat is None:
                        mat = linalg.zeros(dims[tgt], dims[lam])
                    t_off = offsets[(tgt, mu, nu + shift)]
                    kb = linalg.kron(linalg.identity(d1), b2)
                    for r in range(len(kb)):
                        row = mat[t_off + r]
                        for c in range(len(kb[0])):
                            if kb[r][c]:
                                row[src_off + c] += kb[r][c]
            if mat is not None and not linalg.is_zero(mat):
                blocks[lam] = mat
        return blocks

    e_ops = []
    f_ops = []
    for i in range(datum.rank):
        av = datum.simple_coroot(i)
        e_ops.append(WeightedOperator(av, coproduct(m1.e, m2.e, i, av)))
        f_ops.append(WeightedOperator(-av, coproduct(m1.f, m2.f, i, -av)))
    return GradedModule(datum, dims, e_ops, f_ops)


def tensor_pair_index(m1, m2):
    """Expose the deterministic (mu, nu) basis layout of tensor_module."""
    layout, offsets, dims = _tensor_layout(m1, m2)
    return layout, offsets, dims


# ---------------------------------------------------------------------------
# sl(2)-triple completion (hard Lefschetz)
# ---------------------------------------------------------------------------

def _operator_lines(weights, shift):
    """Partition a weight set into maximal chains mu, mu+shift, ..."""
    weights = set(weights)
    lines = []
    for mu in sorted(weights):
        prev = Coweight(tuple(a - b for a, b in zip(mu.coords, shift.coords)))
        if prev in weights:
            continue
        line = [mu]
        nxt = mu + shift
        while nxt in weights:
            line.append(nxt)
            nxt = nxt + shift
        lines.append(line)
    return lines


def sl2_completion(e_op, h_op):
    """The unique lowering operator completing (e, h) to an sl(2)-triple.

    ``h_op`` must carry a scalar block for every weight of the module;
    its block sizes define the underlying space.  Raises LefschetzError
    when e^k fails to biject the (-k) and (+k) h-eigenspaces.
    """
    shift = e_op.shift
    spaces = {mu: len(b) for mu, b in h_op.blocks.items()}
    eig = {}
    for mu, b in h_op.blocks.items():
        v = int(b[0][0]) if b else 0
        for r in range(len(b)):
            for c in range(len(b)):
                if b[r][c] != (v if r == c else 0):
                    raise ValueError("h block at %s is not scalar" % (mu,))
        eig[mu] = v
    f_blocks = {}
    for line in _operator_lines(spaces, shift):
        _complete_line(e_op, spaces, eig, line, shift, f_blocks)
    return WeightedOperator(-shift, f_blocks)


def _complete_line(e_op, spaces, eig, line, shift, f_blocks):
    L = len(line)
    dims = [spaces[mu] for mu in line]
    ns = [eig[mu] for mu in line]
    for t in range(1, L):
        if ns[t] != ns[t - 1] + 2:
            raise ValueError("h eigenvalues along a string do not step by 2")
    eb = [None] * L
    for t in range(L - 1):
        b = e_op.blocks.get(line[t])
        eb[t] = b if b is not None else linalg.zeros(dims[t + 1], dims[t])
    # primitive vectors at each non-positive eigenvalue, pushed up by E
    basis = [[] for _ in range(L)]   # columns spanning each weight space
    fimg = [[] for _ in range(L)]    # F-image of each basis column
    for t in range(L):
        m = -ns[t]
        if m < 0:
            continue
        if t + m + 1 > L - 1:
            # E^{m+1} leaves the line, so it vanishes identically
            prim = [[Fraction(1) if r == c else Fraction(0)
                     for r in range(dims[t])] for c in range(dims[t])]
        else:
            power = eb[t]
            for j in range(1, m + 1):
                power = linalg.mat_mul(eb[t + j], power)
            prim = linalg.nullspace(power)
        for p in prim:
            vec = p
            basis[t].append(vec)
            fimg[t].append(None)  # F kills primitives
            for j in range(1, m + 1):
                if t + j >= L:
                    raise LefschetzError(
                        "string through eigenvalue %d leaves the module" % (-m,))
                prev = vec
                vec = linalg.mat_vec(eb[t + j - 1], vec)
                basis[t + j].append(vec)
                fimg[t + j].append((j * (m - j + 1), prev))
    for t in range(L):
        if len(basis[t]) != dims[t]:
            raise LefschetzError(
                "Lefschetz failure between eigenvalues %d and %d"
                % (ns[t], -ns[t]))
        bmat = linalg.transpose(basis[t])
        if linalg.solve(bmat, linalg.identity(dims[t])) is None:
            raise LefschetzError(
                "Lefschetz failure between eigenvalues %d and %d"
                % (ns[t], -ns[t]))
        if t == 0:
            continue
        gcols = []
        for img in fimg[t]:
            if img is None:
                gcols.append([Fraction(0)] * dims[t - 1])
            else:
                c, prev = img
                gcols.append([c * x for x in prev])
        gmat = linalg.transpose(gcols)
        # F * bmat = gmat
        xt = linalg.solve(linalg.transpose(bmat), linalg.transpose(gmat))
        if xt is None:
            raise LefschetzError(
                "inconsistent string data at eigenvalue %d" % ns[t])
        fb = linalg.transpose(xt)
        if not linalg.is_zero(fb):
            f_blocks[line[t]] = fb


def sl2_uniqueness_dimension(module, i):
    """Dimension of the space of lowering operators commuting with e_i.

    This is the solution space of the homogeneous part of the system
    defining the sl(2) completion; it must be 0 for the completion to be
    unique.
    """
    e_op = module.e[i]
    shift = e_op.shift
    total = 0
    for line in _operator_lines(module.spaces, shift):
        total += _line_commutant_dim(module, e_op, line)
    return total


def _line_commutant_dim(module, e_op, line):
    L = len(line)
    if L <= 1:
        return 0
    dims = [module.dim(mu) for mu in line]
    eb = []
    for t in range(L - 1):
        b = e_op.blocks.get(line[t])
        eb.append(b if b is not None else linalg.zeros(dims[t + 1], dims[t]))
    # unknown D_t : V_t -> V_{t-1}; constraints E_{t-1} D_t = D_{t+1} E_t
    # parametrize D_t = sum_p c_p T_p and propagate up the line
    params = []  # list of matrices, current D_t basis
    nparams = 0
    for t in range(1, L):
        a, b = dims[t - 1], dims[t]
        # unknowns: vec(X) for X = D_t (a x b), plus current params c
        # equations: X E_{t-1} = E_{t-2} D_{t-1}(c)   (as maps V_{t-1} -> V_{t-1})
        rhs_dirs = []
        if t >= 2:
            for T in params:
                rhs_dirs.append(linalg.mat_mul(eb[t - 2], T))
        else:
            nparams = 0
        nx = a * b
        rows = []
        for r in range(a):
            for s in range(dims[t - 1]):
                row = [Fraction(0)] * (nx + nparams)
                for k in range(b):
                    v = eb[t - 1][k][s]
                    if v:
                        row[r * b + k] = Fraction(v)
                for p in range(nparams):
                    if rhs_dirs[p][r][s]:
                        row[nx + p] = -Fraction(rhs_dirs[p][r][s])
                if any(row):
                    rows.append(row)
        if rows:
            null = linalg.nullspace(rows)
        else:
            null = [[Fraction(1) if i2 == j else Fraction(0)
                     for i2 in range(nx + nparams)] for j in range(nx + nparams)]
        new_params = []
        for v in null:
            X = [[v[r * b + k] for k in range(b)] for r in range(a)]
            new_params.append(X)
        params = new_params
        nparams = len(params)
        if nparams == 0:
            return 0
    # final constraint: E_{L-2} D_{L-1 at top} must vanish above the line
    rows = []
    for p, T in enumerate(params):
        img = linalg.mat_mul(eb[L - 2], T)
        rows.append([x for row in img for x in row])
    cols = linalg.transpose(rows)
    sys_rows = [r for r in cols if any(r)]
    if not sys_rows:
        return nparams
    return len(linalg.nullspace(sys_rows))


def lefschetz_bijections(module, i):
    """Check e_i^k : (h_i = -k) -> (h_i = +k) is bijective for all k >= 1.

    Returns a list of (k, line bottom weight) failures; empty means pass.
    """
    e_op = module.e[i]
    shift = e_op.shift
    failures = []
    for line in _operator_lines(module.spaces, shift):
        L = len(line)
        dims = [module.dim(mu) for mu in line]
        ns = [mu.coords[i] for mu in line]
        eb = [None] * L
        for t in range(L - 1):
            b = e_op.blocks.get(line[t])
            eb[t] = b if b is not None else linalg.zeros(dims[t + 1], dims[t])
        neg_ts = [t for t in range(L) if ns[t] < 0]
        # products nest outward from the middle: the interval for t is one
        # step wider on each side than the interval for t + 1
        prod = None
        for t in reversed(neg_ts):
            k = -ns[t]
            t2 = t + k  # index of the +k eigenvalue along the line
            if t2 > L - 1 or ns[t2] != k:
                failures.append((k, line[0]))
                prod = None
                continue
            if prod is None:
                prod = linalg.identity(dims[t])
                for s in range(t, t2):
                    prod = linalg.mat_mul(eb[s], prod)
            else:
                prod = linalg.mat_mul(eb[t2 - 1], linalg.mat_mul(prod, eb[t]))
            if len(prod) != len(prod[0]) or \
                    linalg.solve(prod, linalg.identity(len(prod))) is None:
                failures.append((k, line[0]))
    return failures


# ---------------------------------------------------------------------------
# highest vectors and generated submodules
# ---------------------------------------------------------------------------

def highest_vectors(module, lam):
    """Basis of the joint kernel of all e_i on the weight-lam space."""
    d = module.dim(lam)
    if d == 0:
        return []
    stacked = []
    for i in range(module.datum.rank):
        b = module.e[i].blocks.get(lam)
        if b is not None:
            stacked.extend(b)
    if not stacked:
        return [[Fraction(1) if r == c else Fraction(0) for r in range(d)]
                for c in range(d)]
    return linalg.nullspace(stacked)


def generate_submodule(module, lam, vec):
    """Smallest e/f-stable submodule containing a homogeneous vector.

    Returns a GradedModule with the induced operators; the submodule basis
    at each weight is the deterministic closure order.
    """
    datum = module.datum
    basis = {}    # weight -> list of ambient coordinate column vectors
    red = {}      # weight -> row-echelon rows for independence testing

    def insert(mu, v):
        rows = red.setdefault(mu, [])
        w = list(v)
        for row in rows:
            # rows are normalized with leading 1 at row's pivot
            p = next(j for j, x in enumerate(row) if x)
            if w[p]:
                c = w[p]
                w = [a - c * b for a, b in zip(w, row)]
        if not any(w):
            return False
        p = next(j for j, x in enumerate(w) if x)
        pv = Fraction(w[p]) if not isinstance(w[p], Fraction) else w[p]
        w = [x / pv for x in w]
        rows.append(w)
        basis.setdefault(mu, []).append(list(v))
        return True

    queue = [(lam, list(vec))]
    insert(lam, vec)
    while queue:
        mu, v = queue.pop(0)
        for ops in (module.e, module.f):
            for i in range(datum.rank):
                img = ops[i].apply_block(mu, v)
                if img is None or not any(img):
                    continue
                tgt = mu + ops[i].shift
                if insert(tgt, img):
                    queue.append((tgt, basis[tgt][-1]))

    spaces = {mu: len(vs) for mu, vs in basis.items()}
    bmats = {mu: linalg.transpose(vs) for mu, vs in basis.items()}

    def induce(ops, i, shift):
        blocks = {}
        for mu, vs in basis.items():
            tgt = mu + shift
            cols = []
            nonzero = False
            for v in vs:
                img = ops[i].apply_block(mu, v)
                if img is None:
                    img = [Fraction(0)] * (len(bmats[tgt]) if tgt in bmats
                                           else 0)
                if any(img):
                    nonzero = True
                cols.append(img)
            if not nonzero or tgt not in bmats:
                continue
            sol = linalg.solve(bmats[tgt], linalg.transpose(cols))
            if sol is None:
                raise RuntimeError("closure produced an inconsistent block")
            blocks[mu] = sol
        return blocks

    e_ops = []
    f_ops = []
    for i in range(datum.rank):
        av = datum.simple_coroot(i)
        e_ops.append(WeightedOperator(av, induce(module.e, i, av)))
        f_ops.append(WeightedOperator(-av, induce(module.f, i, -av)))
    return GradedModule(datum, spaces, e_ops, f_ops)


# ---------------------------------------------------------------------------
# character oracles
# ---------------------------------------------------------------------------

def _rho_cw(datum):
    return Coweight((1,) * datum.rank)


def weyl_dimension(datum, lam):
    """Dimension of the simple module with highest weight lam (exact)."""
    rho = _rho_cw(datum)
    num = Fraction(1)
    for beta in datum.positive_coroots:
        num *= Fraction(datum.coweight_inner(lam + rho, beta),
                        datum.coweight_inner(rho, beta))
    assert num.denominator == 1
    return int(num)


_freudenthal_cache = {}


def freudenthal_character(datum, lam, cap=None):
    """Weight multiplicities of the simple module with highest weight lam.

    The multiplicity recursion over the positive coroots, run on plain
    integer coordinate tuples; the total is cross-checked against the
    dimension formula.
    """
    if not datum.is_dominant(lam):
        raise ValueError("highest weight must be dominant")
    if cap is not None and weyl_dimension(datum, lam) > cap:
        raise DimensionCapExceeded(
            "dimension %d exceeds cap %d" % (weyl_dimension(datum, lam), cap))
    cached = _freudenthal_cache.get((datum, lam))
    if cached is not None:
        return dict(cached)
    rank = datum.rank
    cols = [tuple(datum.cartan[j][i] for j in range(rank))
            for i in range(rank)]
    d = [int(x) for x in datum._symmetrizer_dual]
    lamt = lam.coords

    def refl(n, i):
        ni = n[i]
        return tuple(a - ni * b for a, b in zip(n, cols[i]))

    def dominant_with_coeffs(n, c):
        c = list(c)
        while True:
            neg = next((i for i, x in enumerate(n) if x < 0), None)
            if neg is None:
                return n, c
            c[neg] += n[neg]
            n = refl(n, neg)

    # saturated weight set, each with integer coroot coefficients of lam - nu
    weights = {lamt: (0,) * rank}
    queue = [lamt]
    while queue:
        n = queue.pop()
        c = weights[n]
        for i in range(rank):
            n2 = tuple(a - b for a, b in zip(n, cols[i]))
            if n2 in weights:
                continue
            c2 = tuple(x + 1 if j == i else x for j, x in enumerate(c))
            _, cdom = dominant_with_coeffs(n2, c2)
            if all(x >= 0 for x in cdom):
                weights[n2] = c2
                queue.append(n2)

    dominants = sorted((n for n in weights if all(x >= 0 for x in n)),
                       key=lambda n: (sum(weights[n]), n))
    # per positive coroot: coords, weighting vector for the invariant form
    betas = []
    for pr in datum.positive_roots:
        bt = datum.coroot_coweight(pr).coords
        w = tuple(cc * dd for cc, dd in zip(pr.coroot_coords, d))
        betas.append((bt, w, sum(a * b for a, b in zip(w, bt))))

    rho = _rho_cw(datum)
    cc_lam_rho = datum.coroot_coordinates(lam + rho)
    c_lam = datum.coweight_inner(lam + rho, lam + rho)

    def orbit_fill(n, m, out):
        seen = {n}
        stack = [n]
        out[n] = m
        while stack:
            x = stack.pop()
            for i in range(rank):
                if x[i]:
                    y = refl(x, i)
                    if y not in seen:
                        seen.add(y)
                        out[y] = m
                        stack.append(y)

    m_all = {}
    orbit_fill(lamt, 1, m_all)
    for mu in dominants:
        if mu == lamt:
            continue
        acc = 0
        for bt, w, ibb in betas:
            base = sum(a * b for a, b in zip(w, mu))
            k = 1
            nu = tuple(a + b for a, b in zip(mu, bt))
            while nu in weights:
                acc += m_all[nu] * (base + k * ibb)
                k += 1
                nu = tuple(a + b for a, b in zip(nu, bt))
        cmu = weights[mu]
        cc = [a - b for a, b in zip(cc_lam_rho, cmu)]
        rr = [a + b for a, b in zip(mu, rho.coords)]
        denom = c_lam - sum(cc[j] * d[j] * rr[j] for j in range(rank))
        val = Fraction(2 * acc, denom)
        assert val.denominator == 1 and val > 0
        orbit_fill(mu, int(val), m_all)
    char = {Coweight(n): m for n, m in m_all.items()}
    assert sum(char.values()) == weyl_dimension(datum, lam)
    _freudenthal_cache[(datum, lam)] = char
    return dict(char)


def decompose_character(datum, char):
    """Multiplicities of simple modules in a (virtual) character."""
    char = {w: m for w, m in char.items() if m}
    out = {}

    def height_key(w):
        cc = datum.coroot_coordinates(w)
        return (sum(cc), w.coords)

    while char:
        top = max(char, key=height_key)
        dom, was = datum.dominant_representative(top)
        if not was:
            raise ValueError("character has a non-dominant maximal weight")
        m = char[top]
        out[top] = out.get(top, 0) + m
        for w, mm in freudenthal_character(datum, top).items():
            nv = char.get(w, 0) - m * mm
            if nv:
                char[w] = nv
            else:
                char.pop(w, None)
    return out


def klimyk_components(datum, mu, atom_char):
    """Isotypic multiplicities of V(mu) (x) (module with given character).

    Racah-Speiser reflection bookkeeping; exact, and cheap when the second
    factor is small.
    """
    rho = _rho_cw(datum)
    out = {}
    for nu, m in atom_char.items():
        x = mu + nu + rho
        sign = 1
        while True:
            if any(c == 0 for c in x.coords):
                sign = 0
                break
            neg = next((i for i, c in enumerate(x.coords) if c < 0), None)
            if neg is None:
                break
            x = datum.reflect_coweight(neg, x)
            sign = -sign
        if sign == 0:
            continue
        key = x - rho
        out[key] = out.get(key, 0) + sign * m
    return {k: v for k, v in out.items() if v > 0 if
            all(c >= 0 for c in k.coords)}


# ---------------------------------------------------------------------------
# Shapovalov-style highest weight construction (independent module oracle)
# ---------------------------------------------------------------------------

def shapovalov_construct(datum, lam, cap=DEFAULT_CAP):
    """Simple highest-weight module from lowering chains mod the radical
    of the contravariant form.

    Weight spaces are spanned by chains of lowering operators applied to
    the highest vector; the contravariant (Shapovalov) form is computed
    by commuting raises past lowers, and chains in its radical are
    quotiented away.  Operators come out as exact rational matrices.
    """
    if not datum.is_dominant(lam):
        raise ValueError("highest weight must be dominant")
    total = weyl_dimension(datum, lam)
    if total > cap:
        raise DimensionCapExceeded("dimension %d exceeds cap %d" % (total, cap))
    rank = datum.rank
    coroots = [datum.simple_coroot(i) for i in range(rank)]

    # per weight: basis descriptors (i, parent_index), gram matrix,
    # e-images of basis vectors (list over j of coordinate columns)
    basis = {lam: [None]}
    gram = {lam: [[Fraction(1)]]}
    eimg = {lam: [[[] for _ in range(rank)]]}
    for b in eimg[lam]:
        for j in range(rank):
            b[j] = []
    fmat = [dict() for _ in range(rank)]  # fmat[i][src weight] -> matrix

    # process weights one height layer at a time; all parents of a layer-h
    # weight live in layer h-1 and are therefore already settled
    layer = [lam]
    while layer:
        cand_weights = set()
        for mu in layer:
            for i in range(rank):
                cand_weights.add(mu - coroots[i])
        layer = []
        for mu in sorted(cand_weights):
            cands = []
            for i in range(rank):
                parent = mu + coroots[i]
                for pidx in range(len(basis.get(parent, []))):
                    cands.append((i, parent, pidx))
            if not cands:
                continue
            # e_j images of each candidate, in the bases one level up
            cand_e = []
            for (i, parent, pidx) in cands:
                imgs = []
                for j in range(rank):
                    up = mu + coroots[j]
                    dim_up = len(basis.get(up, []))
                    img = [Fraction(0)] * dim_up
                    # e_j f_i = f_i e_j + delta_ij h_j
                    parent_e = eimg[parent][pidx][j]
                    if parent_e:
                        src = parent + coroots[j]
                        fm = fmat[i].get(src)
                        if fm is not None:
                            vec = linalg.mat_vec(fm, parent_e)
                            img = [a + b for a, b in zip(img, vec)]
                    if i == j:
                        hval = parent.coords[j]
                        if hval and dim_up:
                            # parent sits inside basis[mu + coroots[j]] = basis[parent]
                            img[pidx] += hval
                    imgs.append(img)
                cand_e.append(imgs)
            # gram of candidates via <f_i b, c'> = <b, e_i c'>
            n = len(cands)
            g = linalg.zeros(n, n)
            for a in range(n):
                ia, pa, pia = cands[a]
                for b2 in range(n):
                    up_img = cand_e[b2][ia]  # coords in basis[mu+coroots[ia]] = basis[pa]
                    val = Fraction(0)
                    for t, x in enumerate(up_img):
                        if x:
                            val += x * gram[pa][pia][t]
                    g[a][b2] = val
            red, pivots = linalg.rref(g)
            if not pivots:
                continue
            layer.append(mu)
            sel = pivots  # indices of candidates kept as basis
            basis[mu] = [cands[s] for s in sel]
            gram[mu] = [[g[r][c] for c in sel] for r in sel]
            eimg[mu] = [cand_e[s] for s in sel]
            # express every candidate in the chosen basis: columns of f-matrices
            gb = [[g[r][c] for c in range(n)] for r in sel]
            coords = linalg.solve(gram[mu], gb)
            assert coords is not None
            for cidx, (i, parent, pidx) in enumerate(cands):
                if parent not in fmat[i]:
                    fmat[i][parent] = linalg.zeros(len(sel),
                                                   len(basis[parent]))
                for r in range(len(sel)):
                    fmat[i][parent][r][pidx] = coords[r][cidx]

    spaces = {mu: len(vs) for mu, vs in basis.items()}
    e_ops = []
    f_ops = []
    for j in range(rank):
        blocks = {}
        for mu, vs in basis.items():
            up = mu + coroots[j]
            dim_up = spaces.get(up, 0)
            if dim_up == 0:
                continue
            cols = [eimg[mu][t][j] if eimg[mu][t][j] else [Fraction(0)] * dim_up
                    for t in range(len(vs))]
            mat = linalg.transpose(cols)
            if not linalg.is_zero(mat):
                blocks[mu] = mat
        e_ops.append(WeightedOperator(coroots[j], blocks))
        fblocks = {}
        for src, mat in fmat[j].items():
            if mat is not None and not linalg.is_zero(mat):
                fblocks[src] = mat
        f_ops.append(WeightedOperator(-coroots[j], fblocks))
    mod = GradedModule(datum, spaces, e_ops, f_ops)
    if mod.total_dim != total:
        raise RuntimeError("contravariant-form construction produced dimension "
                           "%d, expected %d" % (mod.total_dim, total))
    return mod


# ---------------------------------------------------------------------------
# end-to-end builder
# ---------------------------------------------------------------------------

def _atom_path(datum, atoms_chars, lam):
    """Sequence of intermediate highest weights through the atom product.

    atoms_chars is the list of atom characters; returns [mu_1, ..., mu_n]
    with mu_n = lam such that each mu_j is a component of
    V(mu_{j-1}) (x) atom_j.  Depth-first with pruning; None if no path.
    """
    n = len(atoms_chars)
    tops = [max(c, key=lambda w: (sum(datum.coroot_coordinates(w)), w.coords))
            for c in atoms_chars]
    suffix = [datum.zero_coweight()] * (n + 1)
    for j in range(n - 1, -1, -1):
        suffix[j] = suffix[j + 1] + tops[j]
    dead = set()

    def feasible(mu, j):
        diff = datum.coroot_coordinates(mu + suffix[j] - lam)
        return all(x >= 0 for x in diff)

    def dfs(mu, j):
        if j == n:
            return [] if mu == lam else None
        if (mu, j) in dead:
            return None
        comps = klimyk_components(datum, mu, atoms_chars[j])
        for kappa in sorted(comps, reverse=True):
            if not feasible(kappa, j + 1):
                continue
            rest = dfs(kappa, j + 1)
            if rest is not None:
                return [kappa] + rest
        dead.add((mu, j))
        return None

    start = datum.zero_coweight()
    return dfs(start, 0)


def _embed_module(datum, block, module):
    """View a module over a simple factor as a module over the product.

    Weights are zero-padded outside the factor's coordinate block (valid
    because the Cartan matrix vanishes across blocks); operators for the
    other simple indices act as zero.
    """
    def embed(c):
        coords = [0] * datum.rank
        for k, a in enumerate(block):
            coords[a] = c.coords[k]
        return Coweight(tuple(coords))

    spaces = {embed(mu): d for mu, d in module.spaces.items()}
    e_ops = []
    f_ops = []
    for i in range(datum.rank):
        if i in block:
            k = block.index(i)
            for fam_ops, out in ((module.e, e_ops), (module.f, f_ops)):
                op = fam_ops[k]
                out.append(WeightedOperator(
                    embed(op.shift),
                    {embed(mu): blk for mu, blk in op.blocks.items()}))
        else:
            e_ops.append(WeightedOperator(datum.simple_coroot(i), {}))
            f_ops.append(WeightedOperator(-datum.simple_coroot(i), {}))
    return GradedModule(datum, spaces, e_ops, f_ops)


_ic_step_cache = {}


def build_ic_module(datum, lam, cap=DEFAULT_CAP):
    """The weight/degree model of the intersection cohomology module.

    Atoms from the decomposition of lam are tensored one at a time; after
    each tensor step the submodule generated by a highest vector of the
    next intermediate weight is extracted, ending at lam.  Intermediate
    extractions are cached, so builds sharing a tensor-path prefix reuse
    each other's work.
    """
    from . import atoms as atoms_mod
    if not datum.is_dominant(lam):
        raise ValueError("highest weight must be dominant")
    if weyl_dimension(datum, lam) > cap:
        raise DimensionCapExceeded(
            "dimension %d exceeds cap %d" % (weyl_dimension(datum, lam), cap))
    if lam.is_zero():
        return trivial_module(datum)
    if len(datum.blocks) > 1:
        # product datum: the module is the outer tensor of the factor
        # modules, so build each simple factor and tensor them directly
        current = trivial_module(datum)
        for block in datum.blocks:
            sub_lam = Coweight(tuple(lam.coords[a] for a in block))
            if sub_lam.is_zero():
                continue
            sub = rootdata.build_root_datum(
                [[datum.cartan[a][b] for b in block] for a in block])
            factor = build_ic_module(sub, sub_lam, cap=cap)
            current = tensor_module(current,
                                    _embed_module(datum, block, factor))
        return current
    descs = atoms_mod.atom_decomposition(datum, lam)
    atom_modules = [atoms_mod.build_atom(datum, d) for d in descs]
    chars = [character_of(m) for m in atom_modules]
    path = _atom_path(datum, chars, lam)
    if path is None:
        raise RuntimeError("no extraction path through the atom product")
    current = trivial_module(datum)
    for j, (step, am) in enumerate(zip(path, atom_modules)):
        key = (datum, tuple(descs[:j + 1]), tuple(path[:j + 1]))
        hit = _ic_step_cache.get(key)
        if hit is not None:
            current = hit
            continue
        t = tensor_module(current, am)
        hv = highest_vectors(t, step)
        # deterministic choice: first kernel basis vector that generates a
        # module with highest weight exactly `step`
        chosen = None
        for v in hv:
            sub = generate_submodule(t, step, v)
            top = max(sub.spaces,
                      key=lambda w: (sum(datum.coroot_coordinates(w)), w.coords))
            if top == step:
                chosen = sub
                break
        if chosen is None:
            raise RuntimeError("no highest vector of weight %s found" % (step,))
        _ic_step_cache[key] = chosen
        current = chosen
    return current


# ---------------------------------------------------------------------------
# Levi restriction
# ---------------------------------------------------------------------------

@dataclass
class StringSummand:
    """One sl(2)-string in the restriction to a subminimal Levi."""
    lowest_weight: Coweight
    length: int
    component_degree: int
    multiplicity: int


def levi_restrict(module, i):
    """Decompose under (e_i, h_i, f_i) into strings with component degrees.

    The component degree is the pairing of twice the Weyl vector minus
    the i-th simple root with any weight of the string; it only depends
    on the string's class modulo the i-th coroot line.
    """
    datum = module.datum
    shift = datum.simple_coroot(i)
    out = []
    for line in _operator_lines(module.spaces, shift):
        dims = [module.dim(mu) for mu in line]
        ns = [mu.coords[i] for mu in line]
        # string count by length from the eigenvalue profile:
        # number of strings with lowest eigenvalue -m is
        # dim(-m) - dim(-m - 2)
        counts = {}
        for t, m in enumerate(ns):
            if m > 0:
                continue
            below = dims[t - 1] if t > 0 else 0
            c = dims[t] - below
            if c < 0:
                raise ValueError("weight profile is not an sl(2) character")
            if c:
                counts[t] = c
        for t, c in counts.items():
            length = -ns[t] + 1
            mu = line[t]
            n = datum.two_rho_pairing(mu) - mu.coords[i]
            out.append(StringSummand(mu, length, n, c))
    out.sort(key=lambda s: (s.lowest_weight.coords, s.length))
    return out
