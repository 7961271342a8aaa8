"""Relation checking for graded modules.

Every check is exact (Fractions, zero tolerance) and reported as data: a
VerificationReport lists each check with a pass flag and, on failure, a
witness naming the operators, the weight, and the offending matrix entry.
"""

from dataclasses import dataclass, field

from . import linalg
from .satake import WeightedOperator


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, witness=""):
        self.checks.append(CheckResult(name, passed, witness))

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def merge(self, other):
        self.checks.extend(other.checks)
        return self


def _block_or_zero(module, op, mu):
    b = op.blocks.get(mu)
    if b is not None:
        return b
    src = module.dim(mu)
    tgt = module.dim(mu + op.shift)
    return linalg.zeros(tgt, src)


def op_compose(module, a, b):
    """The operator a∘b as a WeightedOperator (blocks may be zero)."""
    shift = a.shift + b.shift
    blocks = {}
    for mu in module.spaces:
        mid = mu + b.shift
        if module.dim(mid) == 0 or module.dim(mu + shift) == 0:
            continue
        bb = b.blocks.get(mu)
        ab = a.blocks.get(mid)
        if bb is None or ab is None:
            continue
        blocks[mu] = linalg.mat_mul(ab, bb)
    return WeightedOperator(shift, blocks)


def op_commutator(module, a, b):
    shift = a.shift + b.shift
    ab = op_compose(module, a, b)
    ba = op_compose(module, b, a)
    blocks = {}
    for mu in set(ab.blocks) | set(ba.blocks):
        x = ab.blocks.get(mu)
        y = ba.blocks.get(mu)
        if x is None:
            x = linalg.zeros(len(y), len(y[0]))
        if y is None:
            y = linalg.zeros(len(x), len(x[0]))
        d = linalg.mat_sub(x, y)
        if not linalg.is_zero(d):
            blocks[mu] = d
    return WeightedOperator(shift, blocks)


def _first_entry_witness(op, label):
    mu = min(op.blocks)
    m = op.blocks[mu]
    for r, row in enumerate(m):
        for c, x in enumerate(row):
            if x:
                return "%s has entry %s at weight %s, position (%d, %d)" % (
                    label, x, mu.coords, r, c)
    return label


def verify_triples(module):
    """[e_i, f_i] = h_i and the h-commutation rules for every i."""
    report = VerificationReport()
    datum = module.datum
    for i in range(datum.rank):
        comm = op_commutator(module, module.e[i], module.f[i])
        bad = None
        for mu in module.spaces:
            d = module.dim(mu)
            expected = linalg.mat_scale(mu.coords[i], linalg.identity(d))
            got = comm.blocks.get(mu, linalg.zeros(d, d))
            diff = linalg.mat_sub(got, expected)
            if not linalg.is_zero(diff):
                bad = "[e_%d, f_%d] != h_%d at weight %s" % (
                    i + 1, i + 1, i + 1, mu.coords)
                break
        report.add("triple_i%d" % (i + 1), bad is None, bad or "")
        h_op = module.h_operator(i)
        for fam, ops, sign in (("e", module.e, 2), ("f", module.f, -2)):
            comm = op_commutator(module, h_op, ops[i])
            expected = {mu: linalg.mat_scale(sign, blk)
                        for mu, blk in ops[i].blocks.items()}
            ok, wit = _operators_equal(comm.blocks, expected,
                                       "[h_%d, %s_%d]" % (i + 1, fam, i + 1))
            report.add("h_%s_i%d" % (fam, i + 1), ok, wit)
    return report


def _operators_equal(blocks_a, blocks_b, label):
    for mu in sorted(set(blocks_a) | set(blocks_b)):
        a = blocks_a.get(mu)
        b = blocks_b.get(mu)
        if a is None:
            a = linalg.zeros(len(b), len(b[0]))
        if b is None:
            b = linalg.zeros(len(a), len(a[0]))
        if not linalg.is_zero(linalg.mat_sub(a, b)):
            return False, "%s mismatch at weight %s" % (label, mu.coords)
    return True, ""


def verify_cross_commutators(module):
    """[e_i, f_j] = 0 for i != j, and [h_i, e_j] = (alpha_i, alpha_j^vee) e_j."""
    report = VerificationReport()
    datum = module.datum
    for i in range(datum.rank):
        h_op = module.h_operator(i)
        for j in range(datum.rank):
            if i != j:
                comm = op_commutator(module, module.e[i], module.f[j])
                ok = not comm.blocks
                wit = "" if ok else _first_entry_witness(
                    comm, "[e_%d, f_%d]" % (i + 1, j + 1))
                report.add("cross_e%d_f%d" % (i + 1, j + 1), ok, wit)
            a = datum.cartan[i][j]
            for fam, ops, sign in (("e", module.e, a), ("f", module.f, -a)):
                comm = op_commutator(module, h_op, ops[j])
                expected = {mu: linalg.mat_scale(sign, blk)
                            for mu, blk in ops[j].blocks.items()}
                ok, wit = _operators_equal(
                    comm.blocks, expected,
                    "[h_%d, %s_%d]" % (i + 1, fam, j + 1))
                report.add("h%d_%s%d" % (i + 1, fam, j + 1), ok, wit)
    return report


def serre_exponent(datum, i, j):
    """N with ad(e_i)^N e_j = 0: one plus minus the Cartan entry."""
    return 1 - datum.cartan[i][j]


def verify_serre(module):
    """ad(e_i)^{1 - a_ij} e_j = 0 and the same for the f family."""
    report = VerificationReport()
    datum = module.datum
    for i in range(datum.rank):
        for j in range(datum.rank):
            if i == j:
                continue
            n = serre_exponent(datum, i, j)
            for fam, ops in (("e", module.e), ("f", module.f)):
                acc = ops[j]
                for _ in range(n):
                    acc = op_commutator(module, ops[i], acc)
                ok = not acc.blocks
                wit = "" if ok else _first_entry_witness(
                    acc, "ad(%s_%d)^%d %s_%d" % (fam, i + 1, n, fam, j + 1))
                report.add("serre_%s_i%d_j%d_n%d" % (fam, i + 1, j + 1, n),
                           ok, wit)
    # local nilpotence: e_i^N = f_i^N = 0 for N one past the largest h_i
    # eigenvalue.  Blocks only connect support weights (verified by the
    # shift checks), so a nonzero power needs N consecutive steps inside
    # one i-string; that string would carry an eigenvalue above N - 1.
    for i in range(datum.rank):
        top = max((mu.coords[i] for mu in module.spaces), default=0)
        n = 1 + max(top, 0)
        shift = module.e[i].shift
        ok = True
        wit = ""
        for mu in module.spaces:
            chain = mu
            for _ in range(n):
                chain = chain + shift
            if module.dim(chain):
                ok = False
                wit = "i-string from %s has more than %d steps" % (
                    mu.coords, n)
                break
        for fam in ("e", "f"):
            report.add("nilpotent_%s%d" % (fam, i + 1), ok, wit)
    return report


def verify_weight_shifts(module):
    """Every operator block connects weights differing by its shift and
    has matching dimensions."""
    report = VerificationReport()
    datum = module.datum
    for fam, ops in (("e", module.e), ("f", module.f)):
        for i in range(datum.rank):
            ok = True
            wit = ""
            for mu, blk in ops[i].blocks.items():
                tgt = mu + ops[i].shift
                if module.dim(mu) == 0 or module.dim(tgt) == 0:
                    ok, wit = False, "%s_%d block at %s touches a missing " \
                        "weight" % (fam, i + 1, mu.coords)
                    break
                if linalg.shape(blk) != (module.dim(tgt), module.dim(mu)):
                    ok, wit = False, "%s_%d block at %s has shape %s" % (
                        fam, i + 1, mu.coords, linalg.shape(blk))
                    break
            report.add("shift_%s%d" % (fam, i + 1), ok, wit)
    return report


def verify_gradings(module):
    """Degrees are the pairing with twice the Weyl vector; raising
    operators move degree up by exactly 2."""
    report = VerificationReport()
    datum = module.datum
    ok = True
    wit = ""
    for i in range(datum.rank):
        step = datum.two_rho_pairing(datum.simple_coroot(i))
        if step != 2:
            ok = False
            wit = "simple coroot %d has degree step %s" % (i + 1, step)
            break
    report.add("degree_step", ok, wit)
    pars = {module.degree(mu) % 2 for mu in module.spaces}
    report.add("degree_parity", len(pars) <= 1,
               "" if len(pars) <= 1 else "mixed degree parities")
    return report


def characters_equal(char_a, char_b, name="characters_equal"):
    """Exact equality of two weight-multiplicity dictionaries."""
    report = VerificationReport()
    a = {w: m for w, m in char_a.items() if m}
    b = {w: m for w, m in char_b.items() if m}
    if a == b:
        report.add(name, True)
        return report
    for w in sorted(set(a) | set(b)):
        if a.get(w, 0) != b.get(w, 0):
            report.add(name, False,
                       "multiplicity at %s: %d vs %d"
                       % (w.coords, a.get(w, 0), b.get(w, 0)))
            return report
    report.add(name, False, "unreachable")
    return report


def compare_characters(module, lam):
    """Module character against both independent oracles.

    Checks equality with the recursion-based character, equality with the
    character of the contravariant-form construction, and that the joint
    raising kernel is spanned by a single highest vector (at lam).
    """
    from . import satake
    report = VerificationReport()
    char = satake.character_of(module)
    report.merge(characters_equal(
        char, satake.freudenthal_character(module.datum, lam),
        "character_vs_recursion"))
    try:
        shap = satake.shapovalov_construct(module.datum, lam,
                                           cap=max(module.total_dim, 1))
        report.merge(characters_equal(char, satake.character_of(shap),
                                      "character_vs_contravariant"))
    except (satake.DimensionCapExceeded, RuntimeError) as exc:
        report.add("character_vs_contravariant", False, str(exc))
    count = 0
    bad = ""
    for mu in sorted(module.spaces):
        k = len(satake.highest_vectors(module, mu))
        if k and mu != lam:
            bad = "unexpected highest vector at %s" % (mu.coords,)
        if mu == lam:
            count = k
    ok = count == 1 and not bad
    report.add("single_highest_vector", ok,
               bad or ("" if ok else "found %d highest vectors at top"
                       % count))
    return report


def verify_module(module):
    """The full relation suite on one module."""
    report = VerificationReport()
    report.merge(verify_weight_shifts(module))
    report.merge(verify_gradings(module))
    report.merge(verify_triples(module))
    report.merge(verify_cross_commutators(module))
    report.merge(verify_serre(module))
    return report
