"""Canonical text for storyboard trees.

One sentence per shot, single spaces, a comma before every event clause, a
period terminator, and size abbreviations.  Joins start the following line
("Cut to ...", "Dissolve to ...").  Formatting a parse of formatted text is
a fixed point, and reparsing formatted text reproduces the tree.
"""
from __future__ import annotations

from .ast import (
    Composition,
    ContinueTo,
    CraneTo,
    CraneWith,
    Cross,
    DollyTo,
    DollyWith,
    Enter,
    Exit,
    FlatComposition,
    Lock,
    Move,
    PanTo,
    PanWith,
    React,
    ScreenAnchor,
    ScreenEvent,
    ScreenFraction,
    Shot,
    ShotTransition,
    Speak,
    Storyboard,
    SubjectSpec,
    Touch,
    Use,
)

_JOIN_TEXT = {ShotTransition.CUT: "Cut to", ShotTransition.DISSOLVE: "Dissolve to"}


def format_storyboard(sb: Storyboard) -> str:
    lines = [format_shot(sb.shots[0])]
    for join, shot in zip(sb.joins, sb.shots[1:]):
        lines.append(f"{_JOIN_TEXT[join]} {format_shot(shot)}")
    return "\n".join(lines)


def format_shot(shot: Shot) -> str:
    parts = [format_composition(shot.initial)]
    parts.extend(format_event(e) for e in shot.events)
    return ", ".join(parts) + "."


def format_composition(c: Composition) -> str:
    return ", ".join(format_flat(p) for p in c.planes)


def format_flat(plane: FlatComposition) -> str:
    subjects = " and ".join(format_subject(s) for s in plane.subjects)
    return f"{plane.size.name} on {subjects}"


def format_subject(s: SubjectSpec) -> str:
    out = s.name
    if s.profile is not None:
        out += f" {s.profile.value}"
    if isinstance(s.screen, ScreenAnchor):
        out += f" screen {s.screen.value}"
    elif isinstance(s.screen, ScreenFraction):
        out += f" at {s.screen.value}"
    return out


def format_event(e: ScreenEvent) -> str:
    if isinstance(e, Lock):
        return "lock"
    if isinstance(e, (PanWith, DollyWith, CraneWith)):
        return f"{e.verb} with {format_subject(e.subject)}"
    if isinstance(e, (PanTo, DollyTo, CraneTo)):
        return f"{e.verb} to {format_composition(e.target)}"
    if isinstance(e, ContinueTo):
        return f"continue to {format_composition(e.target)}"
    if isinstance(e, Speak):
        return f"{e.actor} speaks"
    if isinstance(e, React):
        return f"{e.actor} reacts" if e.to is None else f"{e.actor} reacts to {e.to}"
    if isinstance(e, Use):
        return f"{e.actor} uses {e.prop}"
    if isinstance(e, Touch):
        return f"{e.actor} touches {e.prop}"
    if isinstance(e, Cross):
        return f"{e.actor} crosses {e.other}"
    if isinstance(e, Enter):
        return f"{e.actor} enters from {e.side.value} to {format_composition(e.target)}"
    if isinstance(e, Exit):
        return f"{e.actor} exits {e.side.value}"
    if isinstance(e, Move):
        return f"{e.actor} moves to {format_composition(e.target)}"
    raise TypeError(f"unknown event {e!r}")
