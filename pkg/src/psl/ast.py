"""Syntax tree for prose storyboards.

A storyboard is an ordered list of shots; each shot opens on a composition
(what the frame shows, foreground plane first) and carries an ordered list
of screen events (how the frame changes while the shot runs).  Everything
lives in screen space: subjects have ordinal shot sizes, eight-sector
profiles, and horizontal positions as exact rationals in (0, 1).  There are
deliberately no world coordinates anywhere in this module.

All values are immutable; helpers that "modify" a composition return a new
one.  Node equality ignores source spans, so a parsed tree compares equal
to the same tree built programmatically.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from enum import Enum, IntEnum
from fractions import Fraction
from typing import ClassVar, Iterator, Union

from .diagnostics import Span


class Size(IntEnum):
    """Shot sizes, ordered tightest to widest."""

    BCU = 1   # big close-up
    CU = 2    # close-up
    MCU = 3   # medium close-up
    MS = 4    # medium shot
    MLS = 5   # medium long shot
    LS = 6    # long shot
    VLS = 7   # very long shot


class Profile(Enum):
    """Facing direction, one of eight 45-degree sectors relative to camera."""

    FRONT = "front"
    THREE_QUARTER_LEFT = "3/4 left"
    LEFT = "left"
    THREE_QUARTER_BACK_LEFT = "3/4 back left"
    BACK = "back"
    THREE_QUARTER_BACK_RIGHT = "3/4 back right"
    RIGHT = "right"
    THREE_QUARTER_RIGHT = "3/4 right"

    @property
    def azimuth(self) -> int:
        """Sector center in degrees; 0 faces the camera, 90 faces frame left."""
        return _AZIMUTH[self]


_AZIMUTH = {
    Profile.FRONT: 0,
    Profile.THREE_QUARTER_LEFT: 45,
    Profile.LEFT: 90,
    Profile.THREE_QUARTER_BACK_LEFT: 135,
    Profile.BACK: 180,
    Profile.THREE_QUARTER_BACK_RIGHT: 225,
    Profile.RIGHT: 270,
    Profile.THREE_QUARTER_RIGHT: 315,
}


class ScreenAnchor(Enum):
    """Named horizontal positions with fixed fractional meanings."""

    FAR_LEFT = "far left"
    LEFT = "left"
    CENTER = "center"
    RIGHT = "right"
    FAR_RIGHT = "far right"

    @property
    def fraction(self) -> Fraction:
        return _ANCHOR_FRACTION[self]


_ANCHOR_FRACTION = {
    ScreenAnchor.FAR_LEFT: Fraction(1, 6),
    ScreenAnchor.LEFT: Fraction(1, 3),
    ScreenAnchor.CENTER: Fraction(1, 2),
    ScreenAnchor.RIGHT: Fraction(2, 3),
    ScreenAnchor.FAR_RIGHT: Fraction(5, 6),
}


@dataclass(frozen=True, slots=True)
class ScreenFraction:
    """Explicit horizontal position, strictly inside the frame."""

    value: Fraction

    def __post_init__(self) -> None:
        if not (0 < self.value < 1):
            raise ValueError(f"screen fraction {self.value} not in (0, 1)")

    @property
    def fraction(self) -> Fraction:
        return self.value


ScreenPosition = Union[ScreenAnchor, ScreenFraction]


class Side(Enum):
    """Frame edge used by entrances and exits."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True, slots=True)
class SubjectSpec:
    """One subject (actor or prop) as framed: name plus optional styling."""

    name: str
    profile: Profile | None = None
    screen: ScreenPosition | None = None


@dataclass(frozen=True, slots=True)
class FlatComposition:
    """Subjects sharing one staging plane, listed left to right."""

    size: Size
    subjects: tuple[SubjectSpec, ...]
    span: Span | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "subjects", tuple(self.subjects))
        if not self.subjects:
            raise ValueError("a plane needs at least one subject")


@dataclass(frozen=True, slots=True)
class Composition:
    """Full frame content: planes ordered foreground first."""

    planes: tuple[FlatComposition, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "planes", tuple(self.planes))
        if not self.planes:
            raise ValueError("a composition needs at least one plane")

    def subject_names(self) -> list[str]:
        """Names in plane order, left to right within each plane."""
        return [s.name for plane in self.planes for s in plane.subjects]

    def find(self, name: str) -> tuple[int, int] | None:
        """(plane index, index within plane) of ``name``, or None."""
        for pi, plane in enumerate(self.planes):
            for si, subject in enumerate(plane.subjects):
                if subject.name == name:
                    return pi, si
        return None


# --- screen events -----------------------------------------------------

class ScreenEvent:
    """Base class for everything that can change or hold the frame."""

    __slots__ = ()
    verb: ClassVar[str]


@dataclass(frozen=True, slots=True)
class Lock(ScreenEvent):
    """Pin the camera; later actor movement plays against a held frame."""

    verb: ClassVar[str] = "lock"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class PanWith(ScreenEvent):
    verb: ClassVar[str] = "pan"
    subject: SubjectSpec
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class DollyWith(ScreenEvent):
    verb: ClassVar[str] = "dolly"
    subject: SubjectSpec
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class CraneWith(ScreenEvent):
    verb: ClassVar[str] = "crane"
    subject: SubjectSpec
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class PanTo(ScreenEvent):
    verb: ClassVar[str] = "pan"
    target: Composition
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class DollyTo(ScreenEvent):
    verb: ClassVar[str] = "dolly"
    target: Composition
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class CraneTo(ScreenEvent):
    verb: ClassVar[str] = "crane"
    target: Composition
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class ContinueTo(ScreenEvent):
    """Keep the camera travelling into a new composition."""

    verb: ClassVar[str] = "continue"
    target: Composition
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Speak(ScreenEvent):
    verb: ClassVar[str] = "speak"
    actor: str
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class React(ScreenEvent):
    verb: ClassVar[str] = "react"
    actor: str
    to: str | None = None
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Use(ScreenEvent):
    verb: ClassVar[str] = "use"
    actor: str
    prop: str
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Touch(ScreenEvent):
    verb: ClassVar[str] = "touch"
    actor: str
    prop: str
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Cross(ScreenEvent):
    """Actor passes in front of or behind an adjacent subject; they swap."""

    verb: ClassVar[str] = "cross"
    actor: str
    other: str
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Enter(ScreenEvent):
    """Entrance from a frame edge; carries the resulting composition."""

    verb: ClassVar[str] = "enter"
    actor: str
    side: Side
    target: Composition
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Exit(ScreenEvent):
    verb: ClassVar[str] = "exit"
    actor: str
    side: Side
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Move(ScreenEvent):
    """Actor movement that rearranges the frame into the target."""

    verb: ClassVar[str] = "move"
    actor: str
    target: Composition
    span: Span | None = field(default=None, compare=False, repr=False)


#: Events that carry (or imply) a destination composition.
TO_EVENTS = (PanTo, DollyTo, CraneTo, ContinueTo, Move, Enter, Exit, Cross)
#: Events during which the current composition is maintained.
WITH_EVENTS = (PanWith, DollyWith, CraneWith, Speak, React, Use, Touch, Lock)

CAMERA_WITH_EVENTS = (PanWith, DollyWith, CraneWith)
CAMERA_TO_EVENTS = (PanTo, DollyTo, CraneTo, ContinueTo)


class ShotTransition(Enum):
    """Editing join between consecutive shots."""

    CUT = "cut"
    DISSOLVE = "dissolve"


@dataclass(frozen=True, slots=True)
class Shot:
    initial: Composition
    events: tuple[ScreenEvent, ...] = ()
    span: Span | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))


@dataclass(frozen=True, slots=True)
class Storyboard:
    shots: tuple[Shot, ...]
    joins: tuple[ShotTransition, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "shots", tuple(self.shots))
        object.__setattr__(self, "joins", tuple(self.joins))
        if not self.shots:
            raise ValueError("a storyboard needs at least one shot")
        if len(self.joins) != len(self.shots) - 1:
            raise ValueError(
                f"{len(self.shots)} shots need {len(self.shots) - 1} joins, "
                f"got {len(self.joins)}"
            )


# --- small structural helpers ------------------------------------------

def event_compositions(event: ScreenEvent) -> Iterator[Composition]:
    """Compositions embedded in an event (zero or one today)."""
    target = getattr(event, "target", None)
    if target is not None:
        yield target


def shot_compositions(shot: Shot) -> Iterator[Composition]:
    """Every composition written in a shot, initial one first."""
    yield shot.initial
    for event in shot.events:
        yield from event_compositions(event)


def storyboard_compositions(sb: Storyboard) -> Iterator[Composition]:
    for shot in sb.shots:
        yield from shot_compositions(shot)


def referenced_names(event: ScreenEvent) -> list[str]:
    """Subject names an event mentions outside of embedded compositions."""
    names: list[str] = []
    for attr in ("actor", "other", "prop", "to"):
        value = getattr(event, attr, None)
        if value is not None:
            names.append(value)
    subject = getattr(event, "subject", None)
    if subject is not None:
        names.append(subject.name)
    return names


def normalize_positions(c: Composition) -> Composition:
    """Replace named anchors with their fractions; drop spans.

    Useful when comparing compositions that came from different routes
    (say, parsed text against a reconstruction from simulation state).
    """
    return Composition(
        tuple(
            FlatComposition(
                plane.size,
                tuple(
                    SubjectSpec(
                        s.name,
                        s.profile,
                        None if s.screen is None else ScreenFraction(s.screen.fraction),
                    )
                    for s in plane.subjects
                ),
            )
            for plane in c.planes
        )
    )


_AST_CLASSES = (
    SubjectSpec, FlatComposition, Composition, Shot, Storyboard,
    Lock, PanWith, DollyWith, CraneWith, PanTo, DollyTo, CraneTo, ContinueTo,
    Speak, React, Use, Touch, Cross, Enter, Exit, Move, ScreenFraction,
)


def field_annotations() -> dict[str, set[str]]:
    """Field type annotations per node class; lets tests pin the alphabet."""
    return {
        cls.__name__: {f.type for f in fields(cls)}
        for cls in _AST_CLASSES
    }
