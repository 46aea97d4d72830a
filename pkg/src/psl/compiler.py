"""Compile storyboards into timed Petri nets and replay them.

The net for a storyboard is a straight chain: one transition per screen
event, a closing hold before every join, and one transition per join.
Control places thread the chain so exactly one transition is enabled at
every step; each on-screen subject holds one attributed token (plane,
slot, size, profile, screen position); a camera place holds one token
whose flag says whether the camera is travelling during the interval the
current marking spans.

Transitions that change the frame retire the old subject tokens and
install the new ones, carrying the entire destination as explicit effect
tokens.  Those destinations are computed here, at compile time, by folding
the shot's events over its opening composition with stylesheet defaults
filled in and named anchors replaced by their fractions.  Transitions that
merely maintain the frame pass subject tokens through untouched, so
simulation preserves them bit for bit.

``timeline`` replays the unique firing sequence and returns the visible
screen state over time: which composition is up, which of the four
per-interval states applies, and whether the frame is mid-change.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Mapping

from .analysis import (
    StateId,
    apply_stylesheet,
    event_states,
    final_camera_state,
    infer_target,
    validate,
)
from .ast import (
    CAMERA_TO_EVENTS,
    CAMERA_WITH_EVENTS,
    WITH_EVENTS,
    Composition,
    FlatComposition,
    Lock,
    ScreenEvent,
    ScreenFraction,
    Shot,
    Storyboard,
    SubjectSpec,
    normalize_positions,
    referenced_names,
)
from .diagnostics import Severity, has_errors
from .formatter import format_event
from .petri import (
    Marking,
    Net,
    PetriToken,
    Place,
    PlaceKind,
    Transition,
    simulate,
)
from .stylesheet import DEFAULT_STYLESHEET, HOLD_DURATION, Stylesheet


class CompileError(ValueError):
    """Storyboard rejected before net construction."""


CAMERA_PLACE = "camera"
_SUBJECT_PREFIX = "subject:"


def subject_place(name: str) -> str:
    return _SUBJECT_PREFIX + name


def control_place(index: int) -> str:
    return f"ctrl:{index}"


@dataclass(frozen=True, slots=True)
class TransitionInfo:
    """Compile-time metadata the net itself does not need."""

    kind: str           # "event", "hold", or "join"
    shot_index: int
    state: StateId
    changes: bool       # True when the frame differs across the firing
    verb: str


@dataclass(frozen=True)
class CompiledStoryboard:
    storyboard: Storyboard
    stylesheet: Stylesheet
    net: Net
    info: Mapping[str, TransitionInfo]
    #: Frame content before transition k, plus the final frame; the
    #: marking after step k reconstructs to ``compositions[k]`` exactly.
    compositions: tuple[Composition, ...]


def shot_frames(shot: Shot, s: Stylesheet = DEFAULT_STYLESHEET) -> list[Composition]:
    """Opening frame plus the frame after each event, fully defaulted."""
    frames = [normalize_positions(apply_stylesheet(shot.initial, s))]
    for e in shot.events:
        after = apply_stylesheet(infer_target(frames[-1], e), s)
        frames.append(normalize_positions(after))
    return frames


def _camera_modes(shot: Shot) -> list[bool]:
    """Tracking flag before each event and after the last one."""
    modes = [False]
    for e in shot.events:
        if isinstance(e, Lock) or isinstance(e, CAMERA_TO_EVENTS):
            modes.append(False)
        elif isinstance(e, CAMERA_WITH_EVENTS):
            modes.append(True)
        else:
            modes.append(modes[-1])
    return modes


def _subject_tokens(comp: Composition) -> dict[str, PetriToken]:
    tokens: dict[str, PetriToken] = {}
    for plane_index, plane in enumerate(comp.planes):
        for slot, subject in enumerate(plane.subjects):
            tokens[subject_place(subject.name)] = PetriToken.of(
                plane=plane_index,
                slot=slot,
                size=plane.size,
                profile=subject.profile,
                screen=subject.screen.fraction,
            )
    return tokens


def _camera_token(moving: bool) -> PetriToken:
    return PetriToken.of(moving=moving)


def composition_of_marking(marking: Marking) -> Composition:
    """Rebuild the frame from the subject tokens; inverse of compilation."""
    rows = []
    for pid, tokens in marking.items():
        if not pid.startswith(_SUBJECT_PREFIX) or not tokens:
            continue
        if len(tokens) != 1:
            raise ValueError(f"{pid} holds {len(tokens)} tokens, expected one")
        token = tokens[0]
        rows.append((token.get("plane"), token.get("slot"), pid[len(_SUBJECT_PREFIX):], token))
    if not rows:
        raise ValueError("no subject tokens in marking")
    rows.sort(key=lambda row: (row[0], row[1]))
    planes: list[FlatComposition] = []
    for plane_index, group in groupby(rows, key=lambda row: row[0]):
        members = list(group)
        if plane_index != len(planes):
            raise ValueError("plane indices are not contiguous")
        sizes = {member[3].get("size") for member in members}
        if len(sizes) != 1:
            raise ValueError(f"plane {plane_index} tokens disagree on size")
        if [member[1] for member in members] != list(range(len(members))):
            raise ValueError(f"plane {plane_index} slots are not contiguous")
        planes.append(
            FlatComposition(
                sizes.pop(),
                tuple(
                    SubjectSpec(name, token.get("profile"), ScreenFraction(token.get("screen")))
                    for _, _, name, token in members
                ),
            )
        )
    return Composition(tuple(planes))


@dataclass(frozen=True, slots=True)
class _Step:
    duration: Fraction
    label: str
    verb: str
    kind: str
    shot_index: int
    state: StateId
    before: Composition
    after: Composition
    reads: tuple[str, ...] = ()  # subject names passed through untouched

    @property
    def moving(self) -> bool:
        """Camera in motion while this step runs."""
        return self.state in (StateId.MOVING_HOLD, StateId.MOVING_CHANGE)


def _duration(s: Stylesheet, verb: str) -> Fraction:
    got = s.duration_by_verb.get(verb)
    if got is None:
        # check-time validation flags this too; compiling proceeds anyway
        warnings.warn(f"no duration for {verb!r}, using 1 unit", stacklevel=2)
        return Fraction(1)
    return got


def _reads(e: ScreenEvent) -> tuple[str, ...]:
    if isinstance(e, WITH_EVENTS):
        return tuple(dict.fromkeys(referenced_names(e)))
    return ()


def compile_storyboard(
    sb: Storyboard, s: Stylesheet = DEFAULT_STYLESHEET
) -> CompiledStoryboard:
    """Validate, fold, and lay the chain out as a net."""
    diagnostics = validate(sb, s)
    if has_errors(diagnostics):
        first = next(d for d in diagnostics if d.severity is Severity.ERROR)
        raise CompileError(f"storyboard does not validate: {first.code} {first.message}")

    frames_by_shot = [shot_frames(shot, s) for shot in sb.shots]
    modes_by_shot = [_camera_modes(shot) for shot in sb.shots]

    steps: list[_Step] = []
    for i, shot in enumerate(sb.shots):
        frames = frames_by_shot[i]
        modes = modes_by_shot[i]
        states = event_states(shot.events)
        for j, e in enumerate(shot.events):
            steps.append(
                _Step(
                    duration=_duration(s, e.verb),
                    label=format_event(e),
                    verb=e.verb,
                    kind="event",
                    shot_index=i,
                    state=states[j],
                    before=frames[j],
                    after=frames[j + 1],
                    reads=_reads(e),
                )
            )
        if i + 1 < len(sb.shots):
            hold_state = StateId.MOVING_HOLD if modes[-1] else StateId.STATIC_HOLD
            steps.append(
                _Step(HOLD_DURATION, "hold", "hold", "hold", i, hold_state,
                      frames[-1], frames[-1])
            )
            join = sb.joins[i]
            steps.append(
                _Step(_duration(s, join.value), join.value, join.value, "join", i,
                      StateId.STATIC_CHANGE,
                      frames[-1], frames_by_shot[i + 1][0])
            )

    subject_names = sorted(
        {name for frames in frames_by_shot for f in frames for name in f.subject_names()}
    )
    places = [Place(CAMERA_PLACE, PlaceKind.CAMERA)]
    places += [Place(subject_place(n), PlaceKind.SUBJECT) for n in subject_names]
    places += [Place(control_place(k), PlaceKind.CONTROL) for k in range(len(steps) + 1)]

    # The camera token always describes the interval its marking spans, so
    # each transition installs the motion flag of the step that follows it.
    end_moving = modes_by_shot[-1][-1]
    motion = [step.moving for step in steps] + [end_moving]

    transitions: list[Transition] = []
    info: dict[str, TransitionInfo] = {}
    for k, step in enumerate(steps, start=1):
        tid = f"t{k}"
        changes = step.before != step.after
        inputs = [control_place(k - 1)]
        outputs = [control_place(k)]
        effect: list[tuple[str, PetriToken]] = []
        if changes or step.kind == "join":
            after_tokens = _subject_tokens(step.after)
            inputs += sorted(_subject_tokens(step.before))
            outputs += sorted(after_tokens)
            effect += sorted(after_tokens.items())
        else:
            for name in step.reads:
                pid = subject_place(name)
                inputs.append(pid)
                outputs.append(pid)
        if motion[k] != motion[k - 1]:
            inputs.append(CAMERA_PLACE)
            outputs.append(CAMERA_PLACE)
            effect.append((CAMERA_PLACE, _camera_token(motion[k])))
        transitions.append(
            Transition(tid, step.label, step.duration,
                       tuple(inputs), tuple(outputs), tuple(effect))
        )
        info[tid] = TransitionInfo(step.kind, step.shot_index, step.state, changes, step.verb)

    initial: Marking = {p.id: () for p in places}
    initial[CAMERA_PLACE] = (_camera_token(motion[0]),)
    initial[control_place(0)] = (PetriToken(),)
    for pid, token in _subject_tokens(frames_by_shot[0][0]).items():
        initial[pid] = (token,)

    net = Net(tuple(places), tuple(transitions), initial)
    compositions = (frames_by_shot[0][0], *(step.after for step in steps))
    return CompiledStoryboard(sb, s, net, info, compositions)


def compile_shot(shot: Shot, s: Stylesheet = DEFAULT_STYLESHEET) -> CompiledStoryboard:
    return compile_storyboard(Storyboard((shot,)), s)


@dataclass(frozen=True, slots=True)
class TimelineEntry:
    t0: Fraction
    t1: Fraction
    shot_index: int
    state: StateId
    in_transition: bool
    composition: Composition


def timeline(
    compiled: CompiledStoryboard, final_hold: Fraction = HOLD_DURATION
) -> list[TimelineEntry]:
    """Replay the net; one entry per interval the viewer can see.

    Zero-length intervals that change nothing (a lock firing, say) are
    dropped; zero-length changes (a cut) stay as boundary markers.
    """
    intervals = simulate(compiled.net, final_hold)
    entries: list[TimelineEntry] = []
    last_shot = len(compiled.storyboard.shots) - 1
    for interval in intervals:
        comp = composition_of_marking(interval.marking)
        if interval.fired is None:
            closing = final_camera_state(compiled.storyboard.shots[-1].events)
            entries.append(
                TimelineEntry(interval.t0, interval.t1, last_shot, closing, False, comp)
            )
            continue
        meta = compiled.info[interval.fired]
        if interval.t0 == interval.t1 and not meta.changes:
            continue
        entries.append(
            TimelineEntry(
                interval.t0, interval.t1, meta.shot_index,
                meta.state, meta.changes, comp,
            )
        )
    return entries
