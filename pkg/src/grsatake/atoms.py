"""Atomic building blocks: minuscule and quasi-minuscule modules.

A minuscule coweight pairs with every root in {-1, 0, 1}; its module is
a single Weyl orbit with one-dimensional weight spaces and unit raising
coefficients.  When an irreducible factor admits no minuscule coweight
the fallback atom is the quasi-minuscule one: the dominant short coroot,
whose module is that orbit plus a zero-weight space.

Every atom is internally validated against the full relation suite
before it is returned.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement

from . import linalg
from .rootdata import Coweight
from .satake import (GradedModule, WeightedOperator, _atom_path,
                     character_of, freudenthal_character, sl2_completion,
                     trivial_module)


class AtomKind(Enum):
    MINUSCULE = "minuscule"
    QUASI_MINUSCULE = "quasi-minuscule"


@dataclass(frozen=True)
class AtomDescriptor:
    kind: AtomKind
    top: Coweight


def classify_coweight(datum, mu):
    """AtomKind of a dominant coweight, or None if it is neither kind."""
    if not datum.is_dominant(mu) or mu.is_zero():
        return None
    pairings = [datum.root_pairing(pr, mu) for pr in datum.positive_roots]
    if all(p in (0, 1) for p in pairings):
        return AtomKind.MINUSCULE
    if mu in quasiminuscule_tops(datum):
        return AtomKind.QUASI_MINUSCULE
    return None


def minuscule_tops(datum, block=None):
    """All nonzero dominant minuscule coweights (optionally one factor)."""
    out = []
    idx = block if block is not None else list(range(datum.rank))
    # minuscule coords are 0/1 on the support
    for bits in range(1, 1 << len(idx)):
        coords = [0] * datum.rank
        for k, i in enumerate(idx):
            if bits >> k & 1:
                coords[i] = 1
        mu = Coweight(tuple(coords))
        if all(datum.root_pairing(pr, mu) in (0, 1)
               for pr in datum.positive_roots):
            out.append(mu)
    out.sort()
    return out


def quasiminuscule_tops(datum):
    """The dominant short coroot of each irreducible factor."""
    out = []
    for block in datum.blocks:
        cands = []
        for pr in datum.positive_roots:
            cw = datum.coroot_coweight(pr)
            if not all(cw.coords[i] == 0 or i in block
                       for i in range(datum.rank)):
                continue
            if any(cw.coords[i] for i in block) and \
                    datum.coweight_inner(cw, cw) == 2 and \
                    datum.is_dominant(cw):
                cands.append(cw)
        if len(cands) == 1:
            out.append(cands[0])
    return out


def omega_set(datum, top):
    """The nonzero weights of the atom with the given top: its Weyl orbit."""
    return frozenset(datum.weyl_orbit(top))


def build_minuscule_atom(datum, top):
    """Orbit module with unit raising coefficients; f by sl(2) completion."""
    if classify_coweight(datum, top) is not AtomKind.MINUSCULE:
        raise ValueError("%s is not minuscule" % (top,))
    orbit = omega_set(datum, top)
    spaces = {mu: 1 for mu in orbit}
    e_ops = []
    f_ops = []
    for i in range(datum.rank):
        av = datum.simple_coroot(i)
        blocks = {}
        for mu in orbit:
            if mu.coords[i] == -1 and (mu + av) in orbit:
                blocks[mu] = [[Fraction(1)]]
        e_op = WeightedOperator(av, blocks)
        h_blocks = {mu: [[Fraction(mu.coords[i])]] for mu in orbit}
        f_ops.append(sl2_completion(e_op, WeightedOperator(
            datum.zero_coweight(), h_blocks)))
        e_ops.append(e_op)
    return GradedModule(datum, spaces, e_ops, f_ops)


def build_quasiminuscule_atom(datum, top):
    """Orbit-plus-zero module for the dominant short coroot of a factor.

    Unit raising coefficients are tried first; if the cross relations
    fail for that normalization (which happens whenever the zero weight
    space has dimension above one), the module is realized through the
    contravariant-form construction instead.
    """
    from . import verify as verify_mod
    from .satake import shapovalov_construct
    if classify_coweight(datum, top) is not AtomKind.QUASI_MINUSCULE:
        raise ValueError("%s is not quasi-minuscule" % (top,))
    char = freudenthal_character(datum, top)
    orbit = omega_set(datum, top)
    zero = datum.zero_coweight()
    zdim = char[zero]
    assert set(char) == orbit | {zero}
    # basis of the zero space: simple coroots lying in the orbit, sorted
    zbasis = sorted(i for i in range(datum.rank)
                    if datum.simple_coroot(i) in orbit)
    assert len(zbasis) == zdim
    spaces = {mu: 1 for mu in orbit}
    spaces[zero] = zdim
    e_ops = []
    f_ops = []
    for i in range(datum.rank):
        av = datum.simple_coroot(i)
        blocks = {}
        for mu in orbit:
            p = mu.coords[i]
            if p == -1 and (mu + av) in orbit:
                blocks[mu] = [[Fraction(1)]]
            elif mu == -av and i in zbasis:
                col = [[Fraction(0)] for _ in zbasis]
                col[zbasis.index(i)][0] = Fraction(1)
                blocks[mu] = col
        if av in orbit and i in zbasis:
            row = [Fraction(0)] * zdim
            row[zbasis.index(i)] = Fraction(1)
            blocks[zero] = [row]
        e_op = WeightedOperator(av, blocks)
        h_blocks = {mu: linalg.mat_scale(mu.coords[i],
                                         linalg.identity(d))
                    for mu, d in spaces.items()}
        f_ops.append(sl2_completion(e_op, WeightedOperator(zero, h_blocks)))
        e_ops.append(e_op)
    mod = GradedModule(datum, spaces, e_ops, f_ops)
    if verify_mod.verify_module(mod).passed:
        return mod
    return shapovalov_construct(datum, top)


_atom_cache = {}


def build_atom(datum, desc):
    key = (datum, desc)
    if key not in _atom_cache:
        if desc.kind is AtomKind.MINUSCULE:
            _atom_cache[key] = build_minuscule_atom(datum, desc.top)
        else:
            _atom_cache[key] = build_quasiminuscule_atom(datum, desc.top)
    return _atom_cache[key]


_fund_cache = {}


def _fundamental_decomposition(datum, i):
    """Atom multiset whose tensor product contains V(omega_i)."""
    key = (datum, i)
    if key in _fund_cache:
        return _fund_cache[key]
    omega = datum.fundamental_coweight(i)
    block = next(b for b in datum.blocks if i in b)
    kind = classify_coweight(datum, omega)
    if kind is AtomKind.MINUSCULE or (
            kind is AtomKind.QUASI_MINUSCULE
            and not minuscule_tops(datum, block)):
        _fund_cache[key] = [AtomDescriptor(kind, omega)]
        return _fund_cache[key]
    tops = minuscule_tops(datum, block)
    if tops:
        descs = {t: AtomDescriptor(AtomKind.MINUSCULE, t) for t in tops}
    else:
        tops = [t for t in quasiminuscule_tops(datum)
                if any(t.coords[j] for j in block)]
        descs = {t: AtomDescriptor(AtomKind.QUASI_MINUSCULE, t) for t in tops}
    chars = {t: freudenthal_character(datum, t) for t in tops}
    tops_desc = sorted(tops, reverse=True)
    for k in range(1, 13):
        for combo in combinations_with_replacement(tops_desc, k):
            if _atom_path(datum, [chars[t] for t in combo], omega) is not None:
                _fund_cache[key] = [descs[t] for t in combo]
                return _fund_cache[key]
    raise RuntimeError("no atom decomposition found for %s" % (omega,))


def atom_decomposition(datum, lam):
    """Deterministic atom multiset whose tensor product contains V(lam).

    A coweight that is itself an atom top decomposes as the single atom;
    otherwise each fundamental-coweight multiple contributes its own
    (cached) decomposition.
    """
    if not datum.is_dominant(lam):
        raise ValueError("coweight must be dominant")
    if lam.is_zero():
        return []
    kind = classify_coweight(datum, lam)
    if kind is AtomKind.MINUSCULE:
        return [AtomDescriptor(kind, lam)]
    if kind is AtomKind.QUASI_MINUSCULE:
        # a factor that has minuscule coweights decomposes through them
        block = next(b for b in datum.blocks if any(lam.coords[i] for i in b))
        if not minuscule_tops(datum, block):
            return [AtomDescriptor(kind, lam)]
    out = []
    for i in range(datum.rank):
        for _ in range(lam.coords[i]):
            out.extend(_fundamental_decomposition(datum, i))
    out.sort(key=lambda d: d.top, reverse=True)
    return out
