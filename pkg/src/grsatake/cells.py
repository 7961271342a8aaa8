"""Orbit combinatorics: degrees, isotropy roots, case tables, and
support feasibility for operator words.

The case tables classify, for a weight mu in the orbit of a minuscule or
quasi-minuscule top and a choice of simple index i, the shape of the
relevant one-parameter stratum.  Negative pairings are reported through
the reflected weight (the tables list only nonnegative cases); records
carry a ``reflected`` flag when that convention applies.
"""

from dataclasses import dataclass, field

from .atoms import AtomKind, classify_coweight, omega_set


@dataclass(frozen=True)
class CellCase:
    section: str        # "minuscule" or "quasi-minuscule"
    tag: str            # "A", "B" or "C"
    pairing: int        # (alpha_i, mu) as given, before any reflection
    reflected: bool
    stratum: str


@dataclass
class CellReport:
    lam: object
    mu: object
    index: int
    case: CellCase
    nonempty_strata: list


@dataclass
class Feasibility:
    feasible: bool
    chain: list
    steps: list = field(default_factory=list)   # per-step case records
    violated: str = ""
    required_pairing: tuple = None  # (index, value) for word-level blocks
    note: str = ""


def mv_degree(datum, mu):
    """Cohomological degree of the mu stratum: pairing with 2*rho."""
    return datum.two_rho_pairing(mu)


def isotropy_root_set(datum, lam):
    """All roots alpha with (alpha, lam) <= 0, as Weight objects.

    Contains every negative root when lam is dominant.
    """
    out = set()
    for pr in datum.positive_roots:
        w = datum.root_weight(pr)
        p = datum.root_pairing(pr, lam)
        if p <= 0:
            out.add(w)
        if -p <= 0:
            out.add(-w)
    return frozenset(out)


def _weight_set(datum, lam, kind):
    ws = set(omega_set(datum, lam))
    if kind is AtomKind.QUASI_MINUSCULE:
        ws.add(datum.zero_coweight())
    return ws


def minuscule_cell_case(datum, lam, mu, i):
    if classify_coweight(datum, lam) is not AtomKind.MINUSCULE:
        raise ValueError("top coweight is not minuscule")
    if mu not in omega_set(datum, lam):
        raise ValueError("%s is not in the orbit of %s" % (mu, lam))
    p = mu.coords[i]
    if p == 1:
        return CellCase("minuscule", "A", p, False,
                        "U_i-orbit through e_mu plus the point below it")
    if p == -1:
        return CellCase("minuscule", "B", p, False,
                        "single point e_mu at the bottom of its i-string")
    if p == 0:
        return CellCase("minuscule", "C", p, False,
                        "single point e_mu, fixed by the i-th subgroup")
    raise ValueError("pairing %d impossible for a minuscule orbit" % p)


def quasiminuscule_cell_case(datum, lam, mu, i):
    if classify_coweight(datum, lam) is not AtomKind.QUASI_MINUSCULE:
        raise ValueError("top coweight is not quasi-minuscule")
    if mu not in omega_set(datum, lam):
        raise ValueError("%s is not in the orbit of %s" % (mu, lam))
    p = mu.coords[i]
    reflected = p < 0
    q = -p if reflected else p
    nu = datum.reflect_coweight(i, mu) if reflected else mu
    if q == 2:
        if nu != datum.simple_coroot(i):
            raise ValueError("pairing 2 must come from the i-th coroot")
        if datum.coweight_inner(nu, nu) != 2:
            raise ValueError("pairing 2 requires a short coroot")
        return CellCase("quasi-minuscule", "B", p, reflected,
                        "two-step string through e_mu and the zero stratum")
    if q == 1:
        return CellCase("quasi-minuscule", "C", p, reflected,
                        "U_i-orbit through e_mu plus the point below it")
    if q == 0:
        return CellCase("quasi-minuscule", "A", p, reflected,
                        "single point e_mu; the fiber character is "
                        "nontrivial on the i-th center")
    raise ValueError("pairing %d impossible for a quasi-minuscule orbit" % p)


def cell_case(datum, lam, mu, i):
    kind = classify_coweight(datum, lam)
    if kind is AtomKind.MINUSCULE:
        return minuscule_cell_case(datum, lam, mu, i)
    if kind is AtomKind.QUASI_MINUSCULE:
        return quasiminuscule_cell_case(datum, lam, mu, i)
    raise ValueError("top coweight is neither minuscule nor quasi-minuscule")


def cell_report(datum, lam, mu, i):
    kind = classify_coweight(datum, lam)
    case = cell_case(datum, lam, mu, i)
    strata = []
    if mu in _weight_set(datum, lam, kind):
        strata.append({"weight": mu, "degree": mv_degree(datum, mu),
                       "stratum": case.stratum})
    return CellReport(lam, mu, i, case, strata)


@dataclass(frozen=True)
class OrbitDescriptor:
    kind: str           # "line" or "point"
    cells: tuple        # (label, weight) pairs
    reflected: bool


def bruhat_orbit(datum, i, lam):
    """Shape of the i-th subminimal orbit through e_lam."""
    p = lam.coords[i]
    if p == 0:
        return OrbitDescriptor("point", (("point", lam),), False)
    reflected = p < 0
    top = datum.reflect_coweight(i, lam) if reflected else lam
    bottom = datum.reflect_coweight(i, top)
    return OrbitDescriptor("line",
                           (("U_i-orbit", top), ("point", bottom)),
                           reflected)


def levi_component_degree(datum, mu, i):
    """Degree offset of the i-th Levi component containing mu.

    Constant along i-strings: the i-th simple root drops out of the
    2*rho pairing.
    """
    return datum.two_rho_pairing(mu) - mu.coords[i]


def _parse_word(word):
    out = []
    for step in word:
        if isinstance(step, str):
            op, idx = step[0], int(step[1:]) - 1
        else:
            op, idx = step[0], step[1]
        if op not in ("e", "f") or idx < 0:
            raise ValueError("bad word step %r" % (step,))
        out.append((op, idx))
    return out


def support_feasible(datum, lam, mu, word):
    """Walk an operator word through the weight set of the atom of lam.

    Each step e_i (f_i) moves the current weight up (down) by the i-th
    simple coroot and requires both endpoints to be weights of the atom;
    a violation reports the first blocked step.  For two-letter mixed
    words e_i then f_j the start-weight pairing the generic case chain
    would force is recorded, matching the vanishing arguments.
    """
    kind = classify_coweight(datum, lam)
    if kind is None:
        raise ValueError("top coweight is neither minuscule nor "
                         "quasi-minuscule")
    steps = _parse_word(word)
    weights = _weight_set(datum, lam, kind)
    bound = 2 if kind is AtomKind.QUASI_MINUSCULE else 1
    res = Feasibility(True, [mu])
    if mu not in weights:
        return Feasibility(False, [mu], violated="start weight %s is not in "
                           "the support" % (mu.coords,))
    cur = mu
    for op, i in steps:
        av = datum.simple_coroot(i)
        nxt = cur + av if op == "e" else cur - av
        if nxt not in weights:
            res.feasible = False
            res.violated = "%s_%d blocked at %s: (alpha_%d, mu)=%d and %s " \
                "is not a weight" % (op, i + 1, cur.coords, i + 1,
                                     cur.coords[i], nxt.coords)
            break
        res.steps.append({"op": op, "index": i,
                          "case": cell_case(datum, lam, cur, i)
                          if cur in omega_set(datum, lam) else None})
        res.chain.append(nxt)
        cur = nxt
    if len(steps) == 2 and steps[0][0] == "e" and steps[1][0] == "f" \
            and steps[0][1] != steps[1][1]:
        i, j = steps[0][1], steps[1][1]
        # both generic orbit steps would force (alpha_j, mu) = 1 - a_ji
        req = 1 - datum.cartan[j][i]
        res.required_pairing = (j, req)
        if not res.feasible and req > bound:
            res.violated = "(alpha_%d, mu)=%d impossible: pairings on the " \
                "support are bounded by %d" % (j + 1, req, bound)
        if res.feasible and datum.cartan[j][i] == 0:
            res.note = "(alpha_%d, alpha_%d^vee)=0" % (j + 1, i + 1)
    return res
