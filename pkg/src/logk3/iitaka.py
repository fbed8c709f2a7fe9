"""Iitaka models of type II log K3 surfaces.

Models live on a minimal rational surface: ``P^2`` with basis ``H``, or
``F_beta`` with basis ``(C, F)``, ``C^2 = -beta``, ``C.F = 1``, ``F^2 = 0``.
Tags ``b-i`` ... ``b-viii`` are irregular (``q > 0``); :func:`build_counterexample`
attaches half points until ``q = 0``, applies the required pivots and checks
that condition (B2) fails on the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .boundary import Circular, Elliptic, LogSurfacePair, Nodal, Realization, validate_pair
from .classify import B2CheckResult, CanonicalClass, b2_fails_on_model, fig2_witness
from .lattice import gram_matrix, hirzebruch, kernel_dim, projective_plane
from .surgery import PRED, SUCC, HalfPointAttach, Pivot, SurgeryStep, run_script

__all__ = [
    "IitakaError",
    "IitakaType",
    "ModelReport",
    "TAGS",
    "IRREGULAR_TAGS",
    "build_model",
    "build_counterexample",
    "iitaka_classes_for",
    "cyclic_quotient_invariants",
    "hirzebruch_jung",
]

TAGS = (
    "a-i", "a-ii", "a-iii", "a-iii'",
    "b-i", "b-ii", "b-iii", "b-iv", "b-v", "b-vi", "b-vii",
    "b-viii", "b-ix", "b-x", "b-xi", "b-xii", "b-xiii",
)  # fmt: skip
IRREGULAR_TAGS = TAGS[4:12]
BETA_TAGS = frozenset({"b-iii", "b-vii", "b-xiii"})


class IitakaError(ValueError):
    pass


def _normalize_tag(tag: str) -> str:
    t = tag.strip().lower().replace("′", "'").replace("ii_", "")
    if t.startswith("ii"):
        t = t[2:].lstrip("_- ")
    return t


@dataclass(frozen=True)
class IitakaType:
    tag: str
    beta: int | None = None

    def __post_init__(self) -> None:
        tag = _normalize_tag(self.tag)
        object.__setattr__(self, "tag", tag)
        if tag not in TAGS:
            raise IitakaError(f"unknown Iitaka type {self.tag!r}; expected one of {', '.join(TAGS)}")
        if tag in BETA_TAGS:
            if self.beta is None:
                raise IitakaError(f"type {tag} needs beta")
            if self.beta < 2:
                raise IitakaError(f"type {tag} needs beta >= 2, got {self.beta}")
        elif self.beta is not None:
            raise IitakaError(f"type {tag} takes no beta")

    def __str__(self) -> str:
        return self.tag if self.beta is None else f"{self.tag}(beta={self.beta})"


@dataclass(frozen=True)
class ModelReport:
    """Outcome of a counterexample build.

    ``pair`` is the final model.  ``b2_model`` is the model (B2) was evaluated
    on: ``pair`` itself, or for a 2-cycle its two-node blowup, since a 2-cycle
    never refutes (B2) on its own model.
    """

    type: IitakaType
    initial: LogSurfacePair
    q_before: int
    attachments: tuple[SurgeryStep, ...]
    q_after: int
    extra_pivots: tuple[SurgeryStep, ...]
    pair: LogSurfacePair
    b2_model: LogSurfacePair
    b2_check: B2CheckResult
    k_plus_d_zero: bool

    @property
    def genuine(self) -> bool:
        return self.q_after == 0 and self.k_plus_d_zero


# (ambient, boundary kind, classes in the ambient basis) per tag; beta-dependent
# families are built in _catalogue.
def _catalogue(t: IitakaType):
    b = t.beta
    p2, f0, f2 = "P2", 0, 2
    table = {
        "a-i": (p2, "elliptic", [(3,)]),
        "a-ii": (f0, "elliptic", [(2, 2)]),
        "a-iii": (f2, "elliptic", [(2, 4)]),
        "b-i": (p2, "circular", [(1,), (1,), (1,)]),
        "b-ii": (f0, "circular", [(1, 0), (0, 1), (1, 0), (0, 1)]),
        "b-iv": (p2, "circular", [(1,), (2,)]),
        "b-v": (f0, "circular", [(1, 1), (1, 1)]),
        "b-vi": (f2, "circular", [(1, 2), (1, 2)]),
        "b-viii": (f0, "circular", [(1, 0), (0, 1), (1, 1)]),
        "b-ix": (p2, "nodal", [(3,)]),
        "b-x": (f0, "nodal", [(2, 2)]),
        "b-xi": (f2, "nodal", [(2, 4)]),
        "b-xii": (f0, "circular", [(1, 2), (1, 0)]),
    }
    if t.tag in table:
        return table[t.tag]
    if t.tag == "b-iii":
        # F_1, Delta_inf, F_2, Delta_lambda
        return (b, "circular", [(0, 1), (1, 0), (0, 1), (1, b)])
    if t.tag == "b-vii":
        # F, Delta_inf, C_3
        return (b, "circular", [(0, 1), (1, 0), (1, b + 1)])
    if t.tag == "b-xiii":
        # C, Delta_inf
        return (b, "circular", [(1, b + 2), (1, 0)])
    raise IitakaError(
        "a-iii' (E + Delta_inf on F_2) has no anticanonical boundary: E ~ 2C + 4F is "
        "disjoint from Delta_inf, so D is disconnected and K + D = Delta_inf != 0"
    )


def build_model(t: IitakaType | str, beta: int | None = None) -> LogSurfacePair:
    """Full-lattice pair on the minimal model for catalogue entry ``t``."""
    if isinstance(t, str):
        t = IitakaType(t, beta)
    ambient, kind, classes = _catalogue(t)
    L = projective_plane() if ambient == "P2" else hirzebruch(ambient)
    real = Realization(L, tuple(classes))
    g = gram_matrix(L, classes)
    if kind == "elliptic":
        shape = Elliptic(g[0][0])
    elif kind == "nodal":
        shape = Nodal(g[0][0])
    else:
        shape = Circular(tuple(g[i][i] for i in range(len(g))))
    pair = LogSurfacePair(shape, real)
    report = validate_pair(pair)
    if not (report.circularity_ok and report.hodge_signature_ok and report.k_plus_d_zero):
        raise AssertionError(f"catalogue entry {t} is inconsistent: {report}")
    return pair


# attachment components and pivot scripts (0-based), per irregular tag
def _recipe(t: IitakaType) -> tuple[tuple[int, ...], tuple[SurgeryStep, ...]]:
    b = t.beta or 0
    return {
        "b-i": ((0, 1), ()),
        "b-ii": ((0, 1), ()),
        "b-iii": ((0, 3), tuple(Pivot(2, SUCC) for _ in range(b - 1))),
        "b-iv": ((1,), ()),
        "b-v": ((0,), ()),
        "b-vi": ((0,), ()),
        "b-vii": ((2,), tuple(Pivot(0, PRED) for _ in range(b))),
        "b-viii": ((2,), ()),
    }[t.tag]


def build_counterexample(t: IitakaType | str, beta: int | None = None) -> ModelReport:
    """Attach half points to an irregular model and certify that (B2) fails."""
    if isinstance(t, str):
        t = IitakaType(t, beta)
    if t.tag not in IRREGULAR_TAGS:
        raise IitakaError(f"counterexamples exist for b-i ... b-viii only, not {t.tag}")
    initial = build_model(t)
    real = initial.realization
    q_before = kernel_dim(real.lattice, real.boundary_classes)
    components, pivots = _recipe(t)
    attachments = tuple(HalfPointAttach(k) for k in components)
    if len(attachments) != q_before:
        raise AssertionError(f"{t}: {len(attachments)} attachments for q = {q_before}")

    attached, _ = run_script(initial, attachments)
    final, _ = run_script(attached, pivots)
    real = final.realization
    q_after = kernel_dim(real.lattice, real.boundary_classes)
    kd = all(x == 0 for x in real.k_plus_d())
    if q_after != 0:
        raise AssertionError(f"{t}: q_after = {q_after}, expected 0")
    if not kd:
        raise AssertionError(f"{t}: K + D != 0 after surgery")

    b2_model = fig2_witness(final) if final.n == 2 else final
    check = b2_fails_on_model(b2_model)
    if not check.fails:
        raise AssertionError(f"{t}: (B2) does not fail on {b2_model.shape}")
    return ModelReport(
        t, initial, q_before, attachments, q_after, pivots, final, b2_model, check, kd
    )


_ALL_A = frozenset({"a-i", "a-ii", "a-iii", "a-iii'"})
_CLASS_MAP = {
    "C0": _ALL_A,
    "C1": frozenset({"b-ix", "b-x", "b-xi"}),
    "C2": frozenset({"b-ix", "b-x", "b-xi", "b-xii", "b-xiii"}),
    "C3": frozenset({"b-xii"}),
    "C4": frozenset({"b-iv", "b-v", "b-vi"}),
}


def iitaka_classes_for(c: CanonicalClass | str) -> frozenset[str]:
    """Iitaka types that a pair of canonical class ``c`` may have as a model."""
    label = c.label if isinstance(c, CanonicalClass) else str(c)
    if label not in _CLASS_MAP:
        raise IitakaError(f"no Iitaka types for class {label!r}")
    return _CLASS_MAP[label]


def cyclic_quotient_invariants(chain) -> tuple[int, int]:
    """``(a, b)`` for the cyclic quotient singularity from contracting ``chain``.

    ``a/b = x_1 - 1/(x_2 - 1/(... - 1/x_m))`` with ``x_i = -chain[i] >= 2``.
    """
    chain = [int(x) for x in chain]
    if not chain:
        raise IitakaError("empty chain")
    bad = [x for x in chain if x > -2]
    if bad:
        raise IitakaError(f"chain entries must be <= -2, got {bad[0]}")
    value = Fraction(-chain[-1])
    for x in reversed(chain[:-1]):
        value = -x - 1 / value
    return value.numerator, value.denominator


def hirzebruch_jung(chain) -> tuple[int, int]:
    """Continuant recursion ``p_k = x_k p_{k-1} - p_{k-2}``; no fractions involved.

    Run on the reversed chain, the last two numerators are ``a`` and ``b``.
    """
    xs = [-int(x) for x in chain]
    p_prev, p = 0, 1
    for x in reversed(xs):
        p_prev, p = p, x * p - p_prev
    return p, p_prev
