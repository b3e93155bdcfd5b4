"""Branching bookkeeping for the minimal representation of O(p,q).

Representation labels, the discrete-decomposability criterion, the two
families of discrete summands, K'-decompositions, the associated-variety
obstruction, the asymptotic K-support and the composition series of the
degenerate principal series at the reducible parameters.

Labels are structural: two labels are equal when kind, signature and
parameter agree.  Nothing here constructs a representation space.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import HypothesisViolated, NotTabulated
from .exact import HalfInt, Signature, SignatureSplit, a0_set, in_a0
from .harmonics import HarmonicLabel, classical_branching, dim_harmonic

KINDS = ("pi_plus", "pi_minus", "minrep", "harmonic", "principal_constituent", "trivial", "sgn")
THEOREM, CONJECTURE = "theorem", "conjecture"
NILPOTENT_TOL = 1e-9


# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class RepLabel:
    kind: str
    sig: Signature
    lam: HalfInt | None = None
    degree: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.lam is not None and not isinstance(self.lam, HalfInt):
            object.__setattr__(self, "lam", HalfInt.of(self.lam))
        p, q = self.sig.p, self.sig.q
        if self.kind == "pi_plus" and not in_a0(self.lam, self.sig):
            raise HypothesisViolated(f"lambda={self.lam} is not in A_0({p},{q})")
        if self.kind == "pi_minus" and not in_a0(self.lam, Signature(q, p)):
            raise HypothesisViolated(f"lambda={self.lam} is not in A_0({q},{p})")
        if self.kind == "harmonic" and (self.degree is None or self.degree < 0):
            raise ValueError("a harmonic label needs a degree >= 0")

    def canonical(self) -> "RepLabel":
        """The O(1) conventions: pi+ of O(1,0) at -1/2 is the trivial
        character and at 1/2 the sign character (likewise pi- of O(0,1))."""
        small = (self.kind == "pi_plus" and (self.sig.p, self.sig.q) == (1, 0)) or (
            self.kind == "pi_minus" and (self.sig.p, self.sig.q) == (0, 1))
        if small:
            kind = "trivial" if self.lam.twice_value == -1 else "sgn"
            return RepLabel(kind, self.sig)
        return self

    def __str__(self):
        p, q = self.sig.p, self.sig.q
        if self.kind == "pi_plus":
            return f"pi+{{{p},{q}}}({self.lam})"
        if self.kind == "pi_minus":
            return f"pi-{{{p},{q}}}({self.lam})"
        if self.kind == "minrep":
            return f"varpi{{{p},{q}}}"
        if self.kind == "harmonic":
            return f"H^{self.degree}(R^{p + q})"
        if self.kind == "trivial":
            return "1"
        if self.kind == "sgn":
            return "sgn"
        return f"I{{{p},{q}}}({self.lam})"


@dataclass(frozen=True)
class Summand:
    left: RepLabel
    right: RepLabel
    lam: HalfInt
    status: str = THEOREM
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    def to_record(self) -> dict:
        return {"left": str(self.left), "right": str(self.right), "lambda": str(self.lam),
                "status": self.status, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class KTypeSet:
    """{(m, n) : m - n >= b, m - n = b mod 2} for O(p) x O(q), truncated at
    m <= cutoff."""

    sig: Signature
    b: int
    cutoff: int

    def members(self) -> list[tuple[int, int]]:
        out = []
        for m in range(self.cutoff + 1):
            for n in range(0, m - self.b + 1):
                if (m - n - self.b) % 2 == 0:
                    out.append((m, n))
        return out

    def dimension(self) -> int:
        p, q = self.sig.p, self.sig.q
        return sum(dim_harmonic(HarmonicLabel(m, p)) * dim_harmonic(HarmonicLabel(n, q))
                   for m, n in self.members())


# ---------------------------------------------------------------------------
# criteria and the two branching theorems


def _check_parent(sig: Signature):
    if sig.p < 2 or sig.q < 2 or (sig.p + sig.q) % 2:
        raise HypothesisViolated(f"need p, q >= 2 and p + q even, got {sig}")


def discretely_decomposable(split: SignatureSplit) -> bool:
    _check_parent(split.parent)
    return min(split.parts) == 0


def branch_compact(p: int, q_prime: int, q_doubleprime: int, l_max: int) -> list[Summand]:
    """Summands pi+{p,q'}(l + q''/2 - 1) x H^l(R^{q''}) for l = 0..l_max.

    Only the degrees with dim H^l(R^{q''}) > 0 and a parameter in A_0(p,q')
    contribute; for q'' = 1 these are l = 0, 1 (trivial and sign)."""
    if q_doubleprime < 1 or q_prime < 0:
        raise HypothesisViolated("need q'' >= 1 and q' >= 0")
    _check_parent(Signature(p, q_prime + q_doubleprime))
    out = []
    for l in range(l_max + 1):
        if dim_harmonic(HarmonicLabel(l, q_doubleprime)) == 0:
            continue
        lam = HalfInt(2 * l + q_doubleprime - 2)
        if not in_a0(lam, Signature(p, q_prime)):
            continue
        left = RepLabel("pi_plus", Signature(p, q_prime), lam)
        right = RepLabel("pi_minus", Signature(0, q_doubleprime), lam)
        out.append(Summand(left, _harmonic_form(right, l), lam))
    return out


def _harmonic_form(label: RepLabel, degree: int) -> RepLabel:
    """A compact-factor label as H^l, or as 1 / sgn for a one-point sphere."""
    canon = label.canonical()
    if canon.kind in ("trivial", "sgn"):
        return canon
    return RepLabel("harmonic", label.sig, label.lam, degree)


def _compact_generic(split: SignatureSplit, l_max: int) -> list[Summand]:
    """Dispatch a split with a zero part to the compact branching law,
    exchanging factors (and p with q) as needed."""
    p1, q1, p2, q2 = split.parts
    if p1 + q1 == 0 or p2 + q2 == 0:
        raise HypothesisViolated("both factors of the subgroup must be nontrivial")
    if p2 == 0:
        return branch_compact(p1, q1, q2, l_max)
    if p1 == 0:
        return [Summand(s.right, s.left, s.lam) for s in branch_compact(p2, q2, q1, l_max)]
    # q'' = 0 or q' = 0: pass to O(q,p); pi+ of O(q, p') becomes pi- of O(p', q)
    swapped = SignatureSplit(q1, p1, q2, p2)
    out = []
    for s in _compact_generic(swapped, l_max):
        out.append(Summand(_flip(s.left), _flip(s.right), s.lam, s.status))
    return out


def _flip(label: RepLabel) -> RepLabel:
    sig = Signature(label.sig.q, label.sig.p)
    kind = {"pi_plus": "pi_minus", "pi_minus": "pi_plus"}.get(label.kind, label.kind)
    if kind in ("pi_plus", "pi_minus"):
        return RepLabel(kind, sig, label.lam, label.degree)
    return RepLabel(kind, sig, label.lam, label.degree)


def _prime_set(sig: Signature, cutoff, strict_above_one: bool) -> list[HalfInt]:
    base = a0_set(sig, cutoff)
    if strict_above_one:
        return [lam for lam in base if lam.twice_value > 2]
    return base


def branch_noncompact_discrete(split: SignatureSplit, cutoff, mode: str = THEOREM) -> list[Summand]:
    """Discrete summands of the restriction to O(p',q') x O(p'',q''):

        lam in A'(p',q') n A'(q'',p''):  pi+{p',q'}(lam) x pi-{p'',q''}(lam)
        lam in A'(q',p') n A'(p'',q''):  pi-{p',q'}(lam) x pi+{p'',q''}(lam)

    with A' = A_0 n {lam > 1}, truncated at ``cutoff``.  In conjecture mode
    the rows obtained by replacing A' with A_0 are appended with a
    conjecture status.  Rows are ordered by lam, then by family."""
    sig = split.parent
    _check_parent(sig)
    if (sig.p, sig.q) == (2, 2):
        raise HypothesisViolated("(p,q) = (2,2) is excluded")
    if mode not in (THEOREM, CONJECTURE):
        raise ValueError(f"unknown mode {mode!r}")
    p1, q1, p2, q2 = split.parts
    rows = []
    for strict in ((True,) if mode == THEOREM else (True, False)):
        status = THEOREM if strict else CONJECTURE
        fam1 = set(_prime_set(Signature(p1, q1), cutoff, strict)) & set(
            _prime_set(Signature(q2, p2), cutoff, strict))
        fam2 = set(_prime_set(Signature(q1, p1), cutoff, strict)) & set(
            _prime_set(Signature(p2, q2), cutoff, strict))
        for lam in fam1:
            rows.append((lam, 0, Summand(RepLabel("pi_plus", Signature(p1, q1), lam).canonical(),
                                         RepLabel("pi_minus", Signature(p2, q2), lam).canonical(),
                                         lam, status)))
        for lam in fam2:
            rows.append((lam, 1, Summand(RepLabel("pi_minus", Signature(p1, q1), lam).canonical(),
                                         RepLabel("pi_plus", Signature(p2, q2), lam).canonical(),
                                         lam, status)))
    seen = set()
    out = []
    for lam, fam, s in sorted(rows, key=lambda r: (r[0], r[1], r[2].status != THEOREM)):
        key = (lam, fam)
        if key in seen:
            continue
        seen.add(key)
        out.append(s)
    return out


def branch(split: SignatureSplit, cutoff, mode: str = THEOREM) -> list[Summand]:
    """Full branching law when a part of the split is zero, otherwise the
    discrete summands.  ``cutoff`` bounds lam."""
    _check_parent(split.parent)
    if min(split.parts) == 0:
        lam_max = HalfInt.of(cutoff)
        rows = _compact_generic(split, l_max=int(lam_max.twice_value // 2) + 2)
        return [s for s in rows if s.lam <= lam_max]
    return branch_noncompact_discrete(split, cutoff, mode)


def missing_parameters_compact_case(q_prime: int, q_doubleprime: int) -> list[HalfInt]:
    """Parameters of the compact branching law (p'' = 0) that the
    discrete-summand construction does not reach: the lam = l + q''/2 - 1
    with lam <= 1."""
    table = {1: [HalfInt(-1), HalfInt(1)], 2: [HalfInt(0), HalfInt(2)], 3: [HalfInt(1)], 4: [HalfInt(2)]}
    return list(table.get(q_doubleprime, []))


def missing_parameters_derived(q_doubleprime: int) -> list[HalfInt]:
    """The same set obtained from the parameter sets: A_0(q'',0) minus A'."""
    base = a0_set(Signature(q_doubleprime, 0), 1)
    return [lam for lam in base if lam.twice_value <= 2]


# ---------------------------------------------------------------------------
# K'-structure


def kprime_decomposition(sig: Signature, q_prime: int, q_doubleprime: int, l_max: int,
                         cutoff: int | None = None) -> list[tuple[KTypeSet, HarmonicLabel]]:
    """Restriction of the K-types to O(p) x O(q') x O(q''): for each l the
    O(p) x O(q') types form the set with b = (q - p)/2 + l."""
    if q_prime < 1 or q_doubleprime < 1 or q_prime + q_doubleprime != sig.q:
        raise HypothesisViolated("need q', q'' >= 1 with q' + q'' = q")
    if (sig.p + sig.q) % 2:
        raise HypothesisViolated("p + q must be even")
    cutoff = l_max + max((sig.q - sig.p) // 2, 0) if cutoff is None else cutoff
    shift = (sig.q - sig.p) // 2
    return [(KTypeSet(Signature(sig.p, q_prime), shift + l, cutoff), HarmonicLabel(l, q_doubleprime))
            for l in range(l_max + 1)]


def minrep_ktypes(sig: Signature, n_max: int) -> list[tuple[int, int]]:
    """(m, n) with m + p/2 = n + q/2, n <= n_max."""
    shift = (sig.q - sig.p) // 2
    return [(n + shift, n) for n in range(n_max + 1) if n + shift >= 0]


def kprime_triples_direct(sig: Signature, q_prime: int, n_max: int) -> list[tuple[int, int, int]]:
    """(m, k, l) from the K-types with n <= n_max, restricting H^n(R^q)
    classically to O(q') x O(q'')."""
    q_pp = sig.q - q_prime
    out = []
    for m, n in minrep_ktypes(sig, n_max):
        for k, l in classical_branching(n, q_prime, q_pp):
            if dim_harmonic(HarmonicLabel(k, q_prime)) and dim_harmonic(HarmonicLabel(l, q_pp)):
                out.append((m, k, l))
    return sorted(out)


def kprime_triples_decomposed(sig: Signature, q_prime: int, n_max: int) -> list[tuple[int, int, int]]:
    """(m, k, l) from the K'-decomposition truncated consistently with n <= n_max."""
    q_pp = sig.q - q_prime
    shift = (sig.q - sig.p) // 2
    out = []
    for kset, hl in kprime_decomposition(sig, q_prime, q_pp, n_max, cutoff=n_max + shift):
        if dim_harmonic(hl) == 0:
            continue
        for m, k in kset.members():
            if m - shift < 0 or dim_harmonic(HarmonicLabel(k, q_prime)) == 0:
                continue
            out.append((m, k, hl.degree))
    return sorted(out)


def kprime_dimension_check(sig: Signature, q_prime: int, n_max: int) -> tuple[int, int]:
    """Total dimension of the K-types with n <= n_max, computed directly and
    through the K'-decomposition."""
    p, q = sig.p, sig.q
    direct = sum(dim_harmonic(HarmonicLabel(m, p)) * dim_harmonic(HarmonicLabel(n, q))
                 for m, n in minrep_ktypes(sig, n_max))
    q_pp = q - q_prime
    shift = (q - p) // 2
    total = 0
    for kset, hl in kprime_decomposition(sig, q_prime, q_pp, n_max, cutoff=n_max + shift):
        total += kset.dimension() * dim_harmonic(hl)
    return direct, total


# ---------------------------------------------------------------------------
# associated variety


@dataclass(frozen=True)
class VarietyReport:
    X_in_variety: bool
    projections_nilpotent: tuple[bool, bool]


def is_nilpotent(A: np.ndarray, tol: float = NILPOTENT_TOL) -> bool:
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if n == 0:
        return True
    scale = max(np.linalg.norm(A), 1.0)
    return bool(np.linalg.norm(np.linalg.matrix_power(A, n)) <= tol * scale**n)


def _pair_nilpotent(X: np.ndarray) -> bool:
    """Both X X^t and X^t X nilpotent (plain transpose, no conjugation)."""
    return is_nilpotent(X @ X.T) and is_nilpotent(X.T @ X)


def variety_report(X: np.ndarray, split: SignatureSplit, tol: float = NILPOTENT_TOL) -> VarietyReport:
    X = np.asarray(X, dtype=complex)
    p1, q1 = split.p1, split.q1
    scale = max(np.linalg.norm(X), 1.0) ** 2
    in_var = bool(np.linalg.norm(X @ X.T) <= tol * scale and np.linalg.norm(X.T @ X) <= tol * scale)
    X1, X4 = X[:p1, :q1], X[p1:, q1:]
    return VarietyReport(in_var, (_pair_nilpotent(X1), _pair_nilpotent(X4)))


def demo_matrix(split: SignatureSplit) -> np.ndarray:
    """(e_1 + i e_{p'+1})(f_1 + i f_{q'+1})^t: a rank-one element of the
    variety whose block projections are E_11 and -E_11."""
    sig = split.parent
    a = np.zeros(sig.p, dtype=complex)
    b = np.zeros(sig.q, dtype=complex)
    a[0], a[split.p1] = 1, 1j
    b[0], b[split.q1] = 1, 1j
    return np.outer(a, b)


def associated_variety_demo(split: SignatureSplit) -> VarietyReport:
    if split.p1 * split.q1 * split.p2 * split.q2 == 0:
        raise HypothesisViolated("the construction needs p'q'p''q'' != 0")
    return variety_report(demo_matrix(split), split)


def _isotropic(dim: int, rng: np.random.Generator) -> np.ndarray:
    if dim < 2:
        return np.zeros(dim, dtype=complex)
    x = rng.standard_normal(dim)
    y = rng.standard_normal(dim)
    y -= (y @ x) / (x @ x) * x
    y *= np.linalg.norm(x) / np.linalg.norm(y)
    return x + 1j * y


def projection_obstruction(split: SignatureSplit, samples: int = 64, seed: int = 0) -> bool:
    """True when some sampled element a b^t of the variety (a, b isotropic)
    has a block projection that is not nilpotent."""
    sig = split.parent
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        X = np.outer(_isotropic(sig.p, rng), _isotropic(sig.q, rng))
        rep = variety_report(X, split)
        if not rep.X_in_variety:
            raise ArithmeticError("sampled matrix left the variety")
        if not all(rep.projections_nilpotent):
            return True
    return False


# ---------------------------------------------------------------------------
# asymptotic K-support and root data


@dataclass(frozen=True)
class RootData:
    sig: Signature
    rho_u_coefficient: Fraction  # rho(u) = c f_1

    def good_range(self, lam) -> bool:
        return HalfInt.of(lam).fraction > Fraction(self.sig.p + self.sig.q, 2) - 2

    def weakly_fair_range(self, lam) -> bool:
        return HalfInt.of(lam).fraction >= 0


@dataclass(frozen=True)
class AsymptoticSupport:
    """Rays as tuples of (coefficient, index) pairs in the basis f_i."""

    sig: Signature
    rays: tuple
    generator_indices: tuple
    roots: RootData = field(default=None)

    def support_pairs(self, a_max: int) -> list[tuple[int, int]]:
        """(a, b) in N^2 with a + p/2 = b + q/2, a <= a_max."""
        shift = Fraction(self.sig.p - self.sig.q, 2)
        out = []
        for a in range(a_max + 1):
            b = a + shift
            if b >= 0 and b.denominator == 1:
                out.append((a, int(b)))
        return out


def asymptotic_k_support(sig: Signature) -> AsymptoticSupport:
    if sig.p < 1 or sig.q < 1:
        raise HypothesisViolated("need p, q >= 1")
    j = sig.p // 2 + 1
    roots = RootData(sig, Fraction(sig.p + sig.q, 2) - 1)
    if sig.p == 2:
        rays = (((1, 1), (1, j)), ((-1, 1), (1, j)))
    else:
        rays = (((1, 1), (1, j)),)
    return AsymptoticSupport(sig, rays, (1, j), roots)


# ---------------------------------------------------------------------------
# composition series


@dataclass(frozen=True)
class CompositionSeries:
    """0 -> sub -> I(lam, eps) -> quotient -> 0, eps = (-1)^epsilon_exponent.
    A direct sum is recorded with an empty quotient and split = True."""

    lam: HalfInt
    epsilon_exponent: int
    sub: tuple
    quotient: tuple
    split: bool = False

    @property
    def epsilon(self) -> int:
        return -1 if self.epsilon_exponent % 2 else 1

    def to_record(self) -> dict:
        return {"lambda": str(self.lam), "epsilon_exponent": self.epsilon_exponent,
                "epsilon": self.epsilon, "sub": [str(x) for x in self.sub],
                "quotient": [str(x) for x in self.quotient], "split": self.split}


def composition_series(lam, sig: Signature) -> list[CompositionSeries]:
    """Constituents of the degenerate principal series at lam in
    {-1, -1/2, 0, 1/2, 1}, sub first."""
    lam = HalfInt.of(lam)
    p, q = sig.p, sig.q

    def plus(x):
        return RepLabel("pi_plus", sig, HalfInt.of(x))

    def minus(x):
        return RepLabel("pi_minus", sig, HalfInt.of(x))

    h = Fraction(1, 2)
    if (p + q) % 2:
        e_hi, e_lo = (p - q + 1) // 2, (p - q - 1) // 2
        if lam == -h:
            return [CompositionSeries(lam, e_hi, (minus(-h),), (plus(h),)),
                    CompositionSeries(lam, e_lo, (plus(-h),), (minus(h),))]
        if lam == h:
            return [CompositionSeries(lam, e_hi, (plus(h),), (minus(-h),)),
                    CompositionSeries(lam, e_lo, (minus(h),), (plus(-h),))]
    else:
        e = (p - q) // 2
        varpi = RepLabel("minrep", sig)
        if lam == -1:
            return [CompositionSeries(lam, e, (varpi,), (minus(1), plus(1)))]
        if lam == 1:
            return [CompositionSeries(lam, e, (minus(1), plus(1)), (varpi,))]
        if lam == 0:
            return [CompositionSeries(lam, (p - q + 2) // 2, (minus(0), plus(0)), (), split=True)]
    raise NotTabulated(f"no composition series tabulated for lambda={lam}, p+q={p + q}")


# ---------------------------------------------------------------------------
# classification


class SpectrumClass(enum.Enum):
    DiscretelyDecomposable = "DiscretelyDecomposable"
    FiniteDiscreteConjectured = "FiniteDiscreteConjectured"
    NoDiscreteConjectured = "NoDiscreteConjectured"
    InfiniteDiscrete = "InfiniteDiscrete"


def finite_locus(split: SignatureSplit) -> bool:
    p1, q1, p2, q2 = split.parts
    return min(p1, q2) <= 1 and min(q1, p2) <= 1


def no_discrete_locus(split: SignatureSplit) -> bool:
    p1, q1, p2, q2 = split.parts
    return finite_locus(split) and p1 + q1 > 1 and p2 + q2 > 1


def spectrum_classification(split: SignatureSplit) -> dict:
    _check_parent(split.parent)
    predicates = {
        "zero_part": min(split.parts) == 0,
        "no_discrete_locus": no_discrete_locus(split),
        "finite_locus": finite_locus(split),
    }
    if predicates["zero_part"]:
        cls, status = SpectrumClass.DiscretelyDecomposable, THEOREM
    elif predicates["no_discrete_locus"]:
        cls, status = SpectrumClass.NoDiscreteConjectured, CONJECTURE
    elif predicates["finite_locus"]:
        cls, status = SpectrumClass.FiniteDiscreteConjectured, CONJECTURE
    else:
        cls, status = SpectrumClass.InfiniteDiscrete, THEOREM
    return {"split": str(split), "classification": cls.value, "status": status,
            "predicates": predicates}
