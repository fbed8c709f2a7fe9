"""Birational surgery on log surface pairs.

Four moves act on a pair (X, D):

* canonical blowup at a node of D (an edge of the dual cycle, or the node of a
  nodal curve), with the total transform as new boundary;
* canonical blowdown of a (-1)-component of D;
* pivot at a 0-component: blow up one of its two nodes, then contract the
  proper transform of the 0-component;
* half point attachment: blow up a smooth point of D (changes the open part,
  so it is not a log isomorphism).

Component indices are 0-based here; the command line uses 1-based indices.
Every move updates the boundary shape combinatorially and, when the pair has a
full-lattice realization, replays the move on the lattice and asserts that the
new boundary classes reproduce the new shape exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .boundary import (
    BoundaryShape,
    Circular,
    Elliptic,
    LogSurfacePair,
    Nodal,
    Realization,
    _check_realization,
    shape_matrix,
)
from .lattice import (
    DivisorClass,
    LatticeError,
    LatticeMap,
    blowup_lattice,
    contract_lattice,
    gram_matrix,
    pairing,
)

__all__ = [
    "SurgeryError",
    "CanonicalBlowup",
    "CanonicalBlowdown",
    "Pivot",
    "HalfPointAttach",
    "ContractCurve",
    "SurgeryStep",
    "TraceStep",
    "SurgeryTrace",
    "canonical_blowup",
    "canonical_blowdown",
    "pivot",
    "half_point_attach",
    "contract_curve",
    "apply_step",
    "run_script",
    "replay",
    "proper_transform",
]

SUCC = "succ"
PRED = "pred"


class SurgeryError(ValueError):
    """A step's precondition failed.  ``index`` is set by :func:`run_script`."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.reason = message
        self.index = index

    def __str__(self) -> str:
        if self.index is None:
            return self.reason
        return f"step {self.index + 1}: {self.reason}"


Mults = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class CanonicalBlowup:
    """Blow up the node ``edge`` of D.  ``point`` picks one of the two nodes of a 2-cycle."""

    edge: tuple[int, int]
    point: int = 0
    mults: Mults = ()


@dataclass(frozen=True)
class CanonicalBlowdown:
    component: int


@dataclass(frozen=True)
class Pivot:
    component: int
    direction: str = SUCC


@dataclass(frozen=True)
class HalfPointAttach:
    component: int
    mults: Mults = ()


@dataclass(frozen=True)
class ContractCurve:
    """Contract a (-1)-class off the boundary that the caller asserts is a curve."""

    cls: tuple[int, ...]


SurgeryStep = Union[CanonicalBlowup, CanonicalBlowdown, Pivot, HalfPointAttach, ContractCurve]


@dataclass(frozen=True)
class TraceStep:
    """One applied step.

    Lattice data (full-lattice pairs only): a class ``v`` of the old lattice
    is carried to ``push(embed(v) - m * exceptional)`` where ``m`` is the
    declared multiplicity (0 for total transforms); absent maps are skipped.
    """

    step: SurgeryStep
    before: BoundaryShape
    after: BoundaryShape
    embed: LatticeMap | None = None
    exceptional: DivisorClass | None = None
    push: LatticeMap | None = None

    def carry(self, v: Sequence[int], mult: int = 0) -> DivisorClass:
        v = tuple(v)
        if self.embed is not None:
            v = self.embed(v)
            if mult:
                v = tuple(x - mult * y for x, y in zip(v, self.exceptional))
        if self.push is not None:
            v = self.push(v)
        return v


@dataclass(frozen=True)
class SurgeryTrace:
    initial: LogSurfacePair
    steps: tuple[TraceStep, ...] = ()
    final: LogSurfacePair | None = None
    tracked: Mapping[str, DivisorClass] = field(default_factory=dict)

    def shapes(self) -> list[BoundaryShape]:
        """Initial shape followed by the shape after every step."""
        return [self.initial.shape] + [s.after for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


# -- helpers -----------------------------------------------------------------


def _circular(S: LogSurfacePair, what: str) -> Circular:
    if not isinstance(S.shape, Circular):
        raise SurgeryError(f"{what} requires a circular boundary")
    return S.shape


def _component(shape: BoundaryShape, k: int) -> int:
    n = shape.n
    if not 0 <= k < n:
        raise SurgeryError(f"component index {k + 1} out of range 1..{n}")
    return k


def _finish(shape: BoundaryShape, real: Realization | None) -> LogSurfacePair:
    if real is not None:
        try:
            _check_realization(shape, real)
        except ValueError as exc:  # pragma: no cover - would mean a rule bug
            raise AssertionError(f"shape rule disagrees with lattice replay: {exc}") from exc
    return LogSurfacePair(shape, real)


def _rotate(S: LogSurfacePair, shift: int) -> LogSurfacePair:
    """Relabel components so that old index ``shift`` becomes index 0."""
    if shift == 0 or not isinstance(S.shape, Circular):
        return S
    lam = S.shape.lambdas
    shape = Circular(lam[shift:] + lam[:shift])
    real = S.realization
    if real is not None:
        cl = real.boundary_classes
        real = Realization(real.lattice, cl[shift:] + cl[:shift])
    return LogSurfacePair(shape, real)


# -- moves ---------------------------------------------------------------------


def canonical_blowup(
    S: LogSurfacePair, edge: tuple[int, int], point_index: int = 0
) -> tuple[LogSurfacePair, TraceStep]:
    """Blow up a node of D, keeping the total transform as boundary.

    On an n-cycle the new (-1)-curve is inserted between the two components
    of ``edge`` and each of them drops by one.  The node of a nodal curve is
    ``edge = (0, 0)``; the nodal curve of self-intersection ``l`` becomes the
    2-cycle ``(l - 4, -1)``.
    """
    i, j = edge
    if point_index not in (0, 1):
        raise SurgeryError("point index must be 0 or 1")
    shape = S.shape
    if isinstance(shape, Elliptic):
        raise SurgeryError("a smooth elliptic boundary has no singular point")
    if isinstance(shape, Nodal):
        if (i, j) != (0, 0):
            raise SurgeryError("the node of a nodal boundary is edge (1, 1)")
        new_shape: BoundaryShape = Circular((shape.self_int - 4, -1))
        pos, hit = 1, {0: 2}
    else:
        n = shape.n
        _component(shape, i)
        _component(shape, j)
        if not shape.adjacent(i, j):
            raise SurgeryError(f"components {i + 1} and {j + 1} are not adjacent")
        if n == 2:
            pos = 1
        elif j == (i + 1) % n:
            pos = i + 1
        else:
            pos = j + 1
        lam = list(shape.lambdas)
        lam[i] -= 1
        lam[j] -= 1
        lam.insert(pos, -1)
        new_shape = Circular(tuple(lam))
        hit = {i: 1, j: 1}

    real = S.realization
    if real is None:
        return _finish(new_shape, None), TraceStep(
            CanonicalBlowup((i, j), point_index), shape, new_shape
        )
    L, embed, e = blowup_lattice(real.lattice)
    classes = []
    for idx, c in enumerate(real.boundary_classes):
        c = embed(c)
        m = hit.get(idx, 0)
        classes.append(tuple(x - m * y for x, y in zip(c, e)))
    classes.insert(pos, e)
    out = _finish(new_shape, Realization(L, tuple(classes)))
    return out, TraceStep(CanonicalBlowup((i, j), point_index), shape, new_shape, embed, e)


def canonical_blowdown(S: LogSurfacePair, k: int) -> tuple[LogSurfacePair, TraceStep]:
    """Contract the (-1)-component ``k``; its two neighbours each gain one."""
    shape = _circular(S, "canonical blowdown")
    _component(shape, k)
    lam = list(shape.lambdas)
    if lam[k] != -1:
        raise SurgeryError(f"component {k + 1} is not a (-1)-curve (self-intersection {lam[k]})")
    n = shape.n
    if n == 2:
        new_shape: BoundaryShape = Nodal(lam[1 - k] + 4)
    else:
        lam[(k - 1) % n] += 1
        lam[(k + 1) % n] += 1
        del lam[k]
        new_shape = Circular(tuple(lam))

    real = S.realization
    if real is None:
        return _finish(new_shape, None), TraceStep(CanonicalBlowdown(k), shape, new_shape)
    L, push = contract_lattice(real.lattice, real.boundary_classes[k])
    classes = tuple(push(c) for idx, c in enumerate(real.boundary_classes) if idx != k)
    out = _finish(new_shape, Realization(L, classes))
    return out, TraceStep(CanonicalBlowdown(k), shape, new_shape, push=push)


def pivot(S: LogSurfacePair, k: int, direction: str = SUCC) -> tuple[LogSurfacePair, TraceStep]:
    """Pivot at the 0-component ``k``.

    ``succ`` blows up the node with component ``k + 1``: the successor drops
    by one and the predecessor gains one.  ``pred`` is the mirror image.  On a
    2-cycle both corrections land on the same component and the type is
    unchanged.  The new 0-curve takes index ``k``.
    """
    shape = _circular(S, "pivot")
    _component(shape, k)
    if direction not in (SUCC, PRED):
        raise SurgeryError(f"unknown pivot direction {direction!r}")
    if shape.lambdas[k] != 0:
        raise SurgeryError(
            f"pivot requires a 0-component (component {k + 1} has self-intersection "
            f"{shape.lambdas[k]})"
        )
    n = shape.n
    nbr = (k + 1) % n if direction == SUCC else (k - 1) % n
    S1, t1 = canonical_blowup(S, (k, nbr))
    pos = 1 if n == 2 else (k + 1 if nbr == (k + 1) % n else nbr + 1)
    kk = k if k < pos else k + 1
    S2, t2 = canonical_blowdown(S1, kk)
    e_pos = pos if pos < kk else pos - 1
    out = _rotate(S2, (e_pos - k) % n)
    return out, TraceStep(Pivot(k, direction), shape, out.shape, t1.embed, t1.exceptional, t2.push)


def half_point_attach(S: LogSurfacePair, k: int) -> tuple[LogSurfacePair, TraceStep]:
    """Blow up a smooth point of component ``k``; the exceptional curve is not in D."""
    if S.realization is None:
        raise SurgeryError("half point attachment requires full-lattice realization")
    shape = S.shape
    _component(shape, k)
    if isinstance(shape, Circular):
        lam = list(shape.lambdas)
        lam[k] -= 1
        new_shape: BoundaryShape = Circular(tuple(lam))
    else:
        new_shape = type(shape)(shape.self_int - 1)
    real = S.realization
    L, embed, e = blowup_lattice(real.lattice)
    classes = []
    for idx, c in enumerate(real.boundary_classes):
        c = embed(c)
        if idx == k:
            c = tuple(x - y for x, y in zip(c, e))
        classes.append(c)
    out = _finish(new_shape, Realization(L, tuple(classes)))
    return out, TraceStep(HalfPointAttach(k), shape, new_shape, embed, e)


def contract_curve(S: LogSurfacePair, cls: Sequence[int]) -> tuple[LogSurfacePair, TraceStep]:
    """Contract a caller-asserted (-1)-curve not contained in D.

    The lattice cannot certify that ``cls`` is represented by an irreducible
    curve; that is the caller's claim.  The pushed boundary must still form a
    boundary of the same kind, otherwise the step is rejected.
    """
    if S.realization is None:
        raise SurgeryError("contracting an off-boundary curve requires full-lattice realization")
    real = S.realization
    cls = tuple(cls)
    if cls in real.boundary_classes:
        raise SurgeryError("class is a boundary component; use a canonical blowdown")
    try:
        L, push = contract_lattice(real.lattice, cls)
    except LatticeError as exc:
        raise SurgeryError(str(exc)) from exc
    classes = tuple(push(c) for c in real.boundary_classes)
    g = gram_matrix(L, classes)
    shape = S.shape
    if isinstance(shape, Circular):
        new_shape: BoundaryShape = Circular(tuple(g[i][i] for i in range(len(g))))
    else:
        new_shape = type(shape)(g[0][0])
    if shape_matrix(new_shape) != g:
        raise SurgeryError("contracted boundary is no longer a cycle of the same length")
    return LogSurfacePair(new_shape, Realization(L, classes)), TraceStep(
        ContractCurve(cls), shape, new_shape, push=push
    )


def apply_step(S: LogSurfacePair, step: SurgeryStep) -> tuple[LogSurfacePair, TraceStep]:
    if isinstance(step, CanonicalBlowup):
        out, t = canonical_blowup(S, tuple(step.edge), step.point)
        return out, TraceStep(step, t.before, t.after, t.embed, t.exceptional, t.push)
    if isinstance(step, CanonicalBlowdown):
        return canonical_blowdown(S, step.component)
    if isinstance(step, Pivot):
        return pivot(S, step.component, step.direction)
    if isinstance(step, HalfPointAttach):
        out, t = half_point_attach(S, step.component)
        return out, TraceStep(step, t.before, t.after, t.embed, t.exceptional, t.push)
    if isinstance(step, ContractCurve):
        return contract_curve(S, step.cls)
    raise SurgeryError(f"unknown step {step!r}")


def run_script(
    S: LogSurfacePair,
    script: Sequence[SurgeryStep],
    tracked: Mapping[str, Sequence[int]] | None = None,
) -> tuple[LogSurfacePair, SurgeryTrace]:
    """Apply ``script`` in order.

    Tracked classes follow total transforms unless a blowup step declares a
    multiplicity for them (``mults=(("name", m),)``), in which case the
    proper transform ``total - m E`` is taken.  The first failing step raises
    :class:`SurgeryError` with its index; nothing partial is returned.
    """
    tracked = {name: tuple(v) for name, v in (tracked or {}).items()}
    if tracked and S.realization is None:
        raise SurgeryError("tracked classes require full-lattice realization")
    current = S
    steps: list[TraceStep] = []
    for idx, step in enumerate(script):
        try:
            current, t = apply_step(current, step)
        except SurgeryError as exc:
            raise SurgeryError(exc.reason, idx) from exc
        except LatticeError as exc:
            raise SurgeryError(str(exc), idx) from exc
        mults = dict(getattr(step, "mults", ()))
        unknown = set(mults) - set(tracked)
        if unknown:
            raise SurgeryError(f"multiplicity declared for untracked class {sorted(unknown)}", idx)
        tracked = {name: t.carry(v, mults.get(name, 0)) for name, v in tracked.items()}
        steps.append(t)
    return current, SurgeryTrace(S, tuple(steps), current, tracked)


def replay(trace: SurgeryTrace) -> LogSurfacePair:
    """Re-run the recorded steps from the initial pair."""
    out, _ = run_script(trace.initial, [t.step for t in trace.steps])
    return out


def proper_transform(
    trace: SurgeryTrace, cls: Sequence[int], mults: Sequence[int]
) -> DivisorClass:
    """Carry ``cls`` through ``trace``, subtracting ``mults[s] E_s`` at each blowup.

    Blowups are the steps that create an exceptional curve: canonical blowups,
    half point attachments and pivots (whose blowup half is followed by a
    contraction).  ``mults`` has one entry per such step, in order.
    """
    blowups = [t for t in trace.steps if t.exceptional is not None]
    if len(mults) != len(blowups):
        raise SurgeryError(
            f"expected {len(blowups)} multiplicities (one per blowup), got {len(mults)}"
        )
    if trace.initial.realization is None:
        raise SurgeryError("proper transforms require full-lattice realization")
    v = tuple(cls)
    it = iter(mults)
    for t in trace.steps:
        v = t.carry(v, next(it) if t.exceptional is not None else 0)
    return v


def self_pairing(S: LogSurfacePair, v: Sequence[int]) -> int:
    return pairing(S.realization.lattice, v, v)
