"""Semantic analysis: classification, continuity, and defaulting.

Shots fall into three categories by how the camera works: no pan, dolly, or
crane at all; panning (or a continued move) from a fixed mount; or travel
on a dolly or crane.  Events split the other way, by what they do to the
frame: "to" forms drive it toward a new composition, "with" forms maintain
it while time passes.

Crossing those two axes gives the four per-interval states used by the
timeline: camera static or moving, composition holding or changing.  A
"with" camera move keeps tracking until a lock or a "to" move supersedes
it, so actor movement under tracking counts as camera-moving.
"""
from __future__ import annotations

from dataclasses import replace
from enum import Enum, IntEnum

from .ast import (
    CAMERA_TO_EVENTS,
    CAMERA_WITH_EVENTS,
    TO_EVENTS,
    Composition,
    Cross,
    Enter,
    Exit,
    FlatComposition,
    Lock,
    ScreenEvent,
    ScreenFraction,
    Shot,
    Storyboard,
    SubjectSpec,
    referenced_names,
    shot_compositions,
)
from .diagnostics import (
    Diagnostic,
    E_BAD_CROSS,
    E_DUPLICATE,
    E_ENTER_ON_SCREEN,
    E_EXIT_ABSENT,
    E_EXIT_EMPTIES,
    E_OFFSCREEN,
    E_ORDERING,
    E_POSITION_CLASH,
    E_TARGET_MISSING,
    Span,
    W_DROPPED,
    W_LOCK_UNUSED,
    W_NO_DURATION,
    error,
    warning,
)
from .stylesheet import DEFAULT_STYLESHEET, Stylesheet, StylesheetError


class ShotCategory(Enum):
    SIMPLE = "Simple"        # camera neither moves nor turns
    COMPLEX = "Complex"      # pan (or continued move) from a fixed mount
    COMPOSITE = "Composite"  # dolly or crane travel


class EventClass(Enum):
    TO_COMPOSITION = "to"      # drives the frame toward a target
    WITH_COMPOSITION = "with"  # maintains the frame while time passes


class StateId(IntEnum):
    """Four per-interval states: camera x composition."""

    STATIC_HOLD = 1     # camera still, composition holding
    STATIC_CHANGE = 2   # camera still, actors rearrange the frame
    MOVING_HOLD = 3     # camera travels, composition maintained
    MOVING_CHANGE = 4   # camera travels toward a new composition


class ContinuityError(ValueError):
    """An event that cannot apply to the current composition."""

    def __init__(self, code: str, message: str) -> None:
        super().__init__(message)
        self.code = code
        self.message = message


def event_class(e: ScreenEvent) -> EventClass:
    if isinstance(e, TO_EVENTS):
        return EventClass.TO_COMPOSITION
    return EventClass.WITH_COMPOSITION


def classify_shot(shot: Shot) -> ShotCategory:
    """Category from the strongest camera move anywhere in the shot."""
    category = ShotCategory.SIMPLE
    for e in shot.events:
        if e.verb in ("dolly", "crane"):
            return ShotCategory.COMPOSITE
        if e.verb in ("pan", "continue"):
            category = ShotCategory.COMPLEX
    return category


def infer_target(current: Composition, e: ScreenEvent) -> Composition:
    """Composition after ``e`` applies to ``current``.

    "With" events return ``current`` unchanged.  Events that carry a
    composition return it verbatim; cross and exit derive theirs.  Raises
    ContinuityError when the event cannot apply.
    """
    if isinstance(e, Cross):
        return _apply_cross(current, e)
    if isinstance(e, Exit):
        return _apply_exit(current, e)
    if isinstance(e, Enter):
        if e.target.find(e.actor) is None:
            raise ContinuityError(
                E_TARGET_MISSING,
                f"the entrance target must include {e.actor}",
            )
        return e.target
    target = getattr(e, "target", None)
    if target is not None:
        return target
    return current


def _apply_cross(current: Composition, e: Cross) -> Composition:
    if e.actor == e.other:
        raise ContinuityError(E_BAD_CROSS, f"{e.actor} cannot cross itself")
    at = current.find(e.actor)
    other_at = current.find(e.other)
    if at is None or other_at is None:
        missing = e.actor if at is None else e.other
        raise ContinuityError(E_BAD_CROSS, f"cannot cross: {missing} is not on screen")
    if at[0] != other_at[0] or abs(at[1] - other_at[1]) != 1:
        raise ContinuityError(
            E_BAD_CROSS,
            f"{e.actor} and {e.other} are not adjacent in the same plane",
        )
    pi, si = at
    _, sj = other_at
    plane = current.planes[pi]
    subjects = list(plane.subjects)
    a, b = subjects[si], subjects[sj]
    # Swap places and screen positions; profiles travel with their owners.
    subjects[si] = replace(b, screen=a.screen)
    subjects[sj] = replace(a, screen=b.screen)
    planes = list(current.planes)
    planes[pi] = FlatComposition(plane.size, tuple(subjects), span=plane.span)
    return Composition(tuple(planes))


def _apply_exit(current: Composition, e: Exit) -> Composition:
    at = current.find(e.actor)
    if at is None:
        raise ContinuityError(E_EXIT_ABSENT, f"{e.actor} is not on screen to exit")
    pi, si = at
    planes = []
    for index, plane in enumerate(current.planes):
        if index != pi:
            planes.append(plane)
            continue
        rest = plane.subjects[:si] + plane.subjects[si + 1:]
        if rest:  # drop the plane entirely once emptied
            planes.append(FlatComposition(plane.size, rest, span=plane.span))
    if not planes:
        raise ContinuityError(E_EXIT_EMPTIES, f"{e.actor} leaving would empty the frame")
    return Composition(tuple(planes))


def event_states(events: tuple[ScreenEvent, ...]) -> list[StateId]:
    """Per-event StateId, folding the camera tracking mode left to right."""
    states: list[StateId] = []
    tracking = False
    for e in events:
        if isinstance(e, Lock):
            tracking = False
            states.append(StateId.STATIC_HOLD)
        elif isinstance(e, CAMERA_WITH_EVENTS):
            tracking = True
            states.append(StateId.MOVING_HOLD)
        elif isinstance(e, CAMERA_TO_EVENTS):
            tracking = False
            states.append(StateId.MOVING_CHANGE)
        else:
            changing = event_class(e) is EventClass.TO_COMPOSITION
            if tracking:
                states.append(StateId.MOVING_CHANGE if changing else StateId.MOVING_HOLD)
            else:
                states.append(StateId.STATIC_CHANGE if changing else StateId.STATIC_HOLD)
    return states


def final_camera_state(events: tuple[ScreenEvent, ...]) -> StateId:
    """State of the beat after the last event (the shot's closing hold)."""
    tracking = False
    for e in events:
        if isinstance(e, Lock) or isinstance(e, CAMERA_TO_EVENTS):
            tracking = False
        elif isinstance(e, CAMERA_WITH_EVENTS):
            tracking = True
    return StateId.MOVING_HOLD if tracking else StateId.STATIC_HOLD


def segment_states(shot: Shot) -> list[tuple[tuple[int, int], StateId]]:
    """Segment the shot into runs of equal state over event indices.

    Returns ``((lo, hi), state)`` pairs with half-open index ranges that
    cover every event in order; a shot with no events is one degenerate
    segment in state 1.
    """
    states = event_states(shot.events)
    if not states:
        return [((0, 0), StateId.STATIC_HOLD)]
    segments: list[tuple[tuple[int, int], StateId]] = []
    lo = 0
    for i in range(1, len(states) + 1):
        if i == len(states) or states[i] != states[lo]:
            segments.append(((lo, i), states[lo]))
            lo = i
    return segments


# --- stylesheet application --------------------------------------------

def apply_stylesheet(c: Composition, s: Stylesheet = DEFAULT_STYLESHEET) -> Composition:
    """Fill in missing profiles and positions; never touch explicit ones.

    Positions come from the stylesheet row for the plane's cardinality, at
    the indices of the unspecified subjects.  Raises StylesheetError when
    the completed plane is not strictly left to right (a defaulted value
    colliding with an explicit one).  Idempotent.
    """
    planes = []
    for plane in c.planes:
        defaults = s.positions_for(len(plane.subjects))
        subjects = []
        for index, subject in enumerate(plane.subjects):
            profile = subject.profile if subject.profile is not None else s.default_profile
            screen = subject.screen
            if screen is None:
                screen = ScreenFraction(defaults[index])
            subjects.append(SubjectSpec(subject.name, profile, screen))
        fractions = [subject.screen.fraction for subject in subjects]
        if any(a >= b for a, b in zip(fractions, fractions[1:])):
            raise StylesheetError(
                "completed positions are not strictly left to right: "
                + ", ".join(str(f) for f in fractions)
            )
        planes.append(FlatComposition(plane.size, tuple(subjects), span=plane.span))
    return Composition(tuple(planes))


# --- continuity validation ----------------------------------------------

_FALLBACK_SPAN = Span(0, 0)


def validate(sb: Storyboard, s: Stylesheet = DEFAULT_STYLESHEET) -> list[Diagnostic]:
    """Check a parsed storyboard; orderly, deterministic diagnostics.

    Composition shape first (duplicates, ordering, defaulting clashes),
    then a continuity fold of each shot's events.  Events that fail are
    reported and skipped, so one mistake does not cascade.
    """
    diagnostics: list[Diagnostic] = []
    for shot in sb.shots:
        for comp in shot_compositions(shot):
            _check_composition(comp, s, _span_of(shot), diagnostics)
        _check_events(shot, diagnostics)
        for e in shot.events:
            if e.verb not in s.duration_by_verb:
                diagnostics.append(
                    warning(
                        W_NO_DURATION,
                        _span_of(e),
                        f"stylesheet has no duration for {e.verb!r}; 1 unit will be assumed",
                    )
                )
    for join in sb.joins:
        if join.value not in s.duration_by_verb:
            diagnostics.append(
                warning(
                    W_NO_DURATION,
                    _FALLBACK_SPAN,
                    f"stylesheet has no duration for {join.value!r}; 1 unit will be assumed",
                )
            )
    return diagnostics


def _span_of(node) -> Span:
    span = getattr(node, "span", None)
    return span if span is not None else _FALLBACK_SPAN


def _check_composition(
    comp: Composition, s: Stylesheet, fallback: Span, diagnostics: list[Diagnostic]
) -> None:
    seen: dict[str, int] = {}
    for plane in comp.planes:
        span = plane.span if plane.span is not None else fallback
        for subject in plane.subjects:
            if subject.name in seen:
                diagnostics.append(
                    error(E_DUPLICATE, span, f"{subject.name} appears twice in one composition")
                )
            seen[subject.name] = 1
        explicit = [sub.screen.fraction for sub in plane.subjects if sub.screen is not None]
        if any(a >= b for a, b in zip(explicit, explicit[1:])):
            diagnostics.append(
                error(E_ORDERING, span, "explicit positions must increase left to right")
            )
            continue  # the defaulting check would only repeat the complaint
        try:
            apply_stylesheet(Composition((plane,)), s)
        except StylesheetError:
            diagnostics.append(
                error(
                    E_POSITION_CLASH,
                    span,
                    "default positions collide with the explicit ones; "
                    "spell out every position in this plane",
                )
            )


def _check_events(shot: Shot, diagnostics: list[Diagnostic]) -> None:
    current = shot.initial
    lock_at: int | None = None
    lock_used = True
    for index, e in enumerate(shot.events):
        span = _span_of(e)
        if isinstance(e, Lock):
            if not lock_used:
                diagnostics.append(_lock_warning(shot, lock_at))
            lock_at, lock_used = index, False
        elif e.verb in ("pan", "dolly", "crane", "continue"):
            if not lock_used:
                diagnostics.append(_lock_warning(shot, lock_at))
            lock_used = True
        else:
            lock_used = True  # any actor action consumes the lock

        on_screen = set(current.subject_names())
        if isinstance(e, Enter):
            if e.actor in on_screen:
                diagnostics.append(
                    error(E_ENTER_ON_SCREEN, span, f"{e.actor} is already on screen")
                )
                continue
        else:
            missing = [name for name in referenced_names(e) if name not in on_screen]
            if missing and not isinstance(e, (Cross, Exit)):
                diagnostics.append(
                    error(E_OFFSCREEN, span, f"{missing[0]} is not on screen")
                )
                continue
        try:
            nxt = infer_target(current, e)
        except ContinuityError as failure:
            diagnostics.append(error(failure.code, span, failure.message))
            continue
        if event_class(e) is EventClass.TO_COMPOSITION and not isinstance(e, (Cross, Exit)):
            dropped = sorted(on_screen - set(nxt.subject_names()))
            if dropped:
                diagnostics.append(
                    warning(
                        W_DROPPED,
                        span,
                        f"target drops {', '.join(dropped)} without an exit",
                    )
                )
        current = nxt
    if not lock_used:
        diagnostics.append(_lock_warning(shot, lock_at))


def _lock_warning(shot: Shot, lock_at: int | None) -> Diagnostic:
    e = shot.events[lock_at] if lock_at is not None else shot
    return warning(W_LOCK_UNUSED, _span_of(e), "lock with no actor action in its scope")
