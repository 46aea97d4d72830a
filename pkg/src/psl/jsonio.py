"""Lossless JSON forms for syntax trees, nets, and timelines.

Field names mirror the tree types one to one, so the schema reads
straight off the dataclasses.  Exact rationals serialize as strings
("2/3"), never floats; enums serialize as their surface text.  Source
spans are deliberately not serialized: two trees that differ only in
where they were parsed from are the same storyboard.

Top-level documents carry ``"psl_schema": 1``.  ``storyboard_from_dict``
accepts exactly what ``storyboard_to_dict`` emits (with or without the
version stamp) and rejects anything else.  Nets and timelines are export
only; they are derived artifacts, so nothing reads them back.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping, Sequence

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
    Profile,
    React,
    ScreenAnchor,
    ScreenEvent,
    ScreenFraction,
    ScreenPosition,
    Shot,
    ShotTransition,
    Side,
    Size,
    Speak,
    Storyboard,
    SubjectSpec,
    Touch,
    Use,
)
from .compiler import CompiledStoryboard, TimelineEntry
from .petri import MarkingInterval, PetriToken

SCHEMA_VERSION = 1

_EVENT_TAGS: dict[type, str] = {
    Lock: "lock",
    PanWith: "pan-with",
    DollyWith: "dolly-with",
    CraneWith: "crane-with",
    PanTo: "pan-to",
    DollyTo: "dolly-to",
    CraneTo: "crane-to",
    ContinueTo: "continue-to",
    Speak: "speak",
    React: "react",
    Use: "use",
    Touch: "touch",
    Cross: "cross",
    Enter: "enter",
    Exit: "exit",
    Move: "move",
}


# --- encoding ------------------------------------------------------------

def subject_to_dict(s: SubjectSpec) -> dict[str, Any]:
    out: dict[str, Any] = {"name": s.name}
    if s.profile is not None:
        out["profile"] = s.profile.value
    if s.screen is not None:
        out["screen"] = _screen_to_dict(s.screen)
    return out


def _screen_to_dict(screen: ScreenPosition) -> dict[str, str]:
    if isinstance(screen, ScreenAnchor):
        return {"anchor": screen.value}
    return {"at": str(screen.value)}


def composition_to_dict(c: Composition) -> dict[str, Any]:
    return {
        "planes": [
            {"size": plane.size.name, "subjects": [subject_to_dict(s) for s in plane.subjects]}
            for plane in c.planes
        ]
    }


def event_to_dict(e: ScreenEvent) -> dict[str, Any]:
    out: dict[str, Any] = {"event": _EVENT_TAGS[type(e)]}
    if isinstance(e, (PanWith, DollyWith, CraneWith)):
        out["subject"] = subject_to_dict(e.subject)
    elif isinstance(e, (PanTo, DollyTo, CraneTo, ContinueTo)):
        out["target"] = composition_to_dict(e.target)
    elif isinstance(e, Speak):
        out["actor"] = e.actor
    elif isinstance(e, React):
        out["actor"] = e.actor
        if e.to is not None:
            out["to"] = e.to
    elif isinstance(e, (Use, Touch)):
        out["actor"] = e.actor
        out["prop"] = e.prop
    elif isinstance(e, Cross):
        out["actor"] = e.actor
        out["other"] = e.other
    elif isinstance(e, Enter):
        out["actor"] = e.actor
        out["side"] = e.side.value
        out["target"] = composition_to_dict(e.target)
    elif isinstance(e, Exit):
        out["actor"] = e.actor
        out["side"] = e.side.value
    elif isinstance(e, Move):
        out["actor"] = e.actor
        out["target"] = composition_to_dict(e.target)
    return out


def shot_to_dict(shot: Shot) -> dict[str, Any]:
    return {
        "initial": composition_to_dict(shot.initial),
        "events": [event_to_dict(e) for e in shot.events],
    }


def storyboard_to_dict(sb: Storyboard) -> dict[str, Any]:
    return {
        "psl_schema": SCHEMA_VERSION,
        "shots": [shot_to_dict(s) for s in sb.shots],
        "joins": [j.value for j in sb.joins],
    }


def _attr_value(value: object) -> object:
    if isinstance(value, bool):
        return value
    if isinstance(value, Size):
        return value.name
    if isinstance(value, Profile):
        return value.value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, str)):
        return value
    raise TypeError(f"token attribute {value!r} has no JSON form")


def _token_to_dict(token: PetriToken) -> dict[str, Any]:
    return {key: _attr_value(value) for key, value in token.attrs}


def net_to_dict(compiled: CompiledStoryboard) -> dict[str, Any]:
    net = compiled.net
    transitions = []
    for t in net.transitions:
        meta = compiled.info[t.id]
        transitions.append(
            {
                "id": t.id,
                "label": t.label,
                "kind": meta.kind,
                "verb": meta.verb,
                "shot": meta.shot_index,
                "state": int(meta.state),
                "changes_composition": meta.changes,
                "duration": str(t.duration),
                "inputs": list(t.inputs),
                "outputs": list(t.outputs),
                "effect": {pid: _token_to_dict(token) for pid, token in t.effect},
            }
        )
    return {
        "psl_schema": SCHEMA_VERSION,
        "places": [{"id": p.id, "kind": p.kind.value} for p in net.places],
        "transitions": transitions,
        "initial": _marking_to_dict(net.initial),
    }


def _marking_to_dict(marking: Mapping[str, tuple[PetriToken, ...]]) -> dict[str, Any]:
    return {
        pid: [_token_to_dict(t) for t in tokens]
        for pid, tokens in marking.items()
        if tokens
    }


def trajectory_to_dict(intervals: Sequence[MarkingInterval]) -> dict[str, Any]:
    return {
        "psl_schema": SCHEMA_VERSION,
        "intervals": [
            {
                "t0": str(iv.t0),
                "t1": str(iv.t1),
                "fired": iv.fired,
                "marking": _marking_to_dict(iv.marking),
            }
            for iv in intervals
        ],
    }


def timeline_to_dict(entries: Sequence[TimelineEntry]) -> dict[str, Any]:
    return {
        "psl_schema": SCHEMA_VERSION,
        "entries": [
            {
                "t0": str(e.t0),
                "t1": str(e.t1),
                "shot": e.shot_index,
                "state": int(e.state),
                "in_transition": e.in_transition,
                "composition": composition_to_dict(e.composition),
            }
            for e in entries
        ],
    }


# --- decoding ------------------------------------------------------------

def _require(data: Mapping[str, Any], key: str, kind: type) -> Any:
    try:
        value = data[key]
    except (KeyError, TypeError):
        raise ValueError(f"missing {key!r}") from None
    if not isinstance(value, kind):
        raise ValueError(f"{key!r} should be {kind.__name__}, got {type(value).__name__}")
    return value


def _screen_from_dict(data: Mapping[str, Any]) -> ScreenPosition:
    if "anchor" in data:
        return ScreenAnchor(data["anchor"])
    if "at" in data:
        return ScreenFraction(Fraction(data["at"]))
    raise ValueError(f"screen position needs 'anchor' or 'at', got {sorted(data)}")


def subject_from_dict(data: Mapping[str, Any]) -> SubjectSpec:
    name = _require(data, "name", str)
    profile = Profile(data["profile"]) if "profile" in data else None
    screen = _screen_from_dict(data["screen"]) if "screen" in data else None
    return SubjectSpec(name, profile, screen)


def composition_from_dict(data: Mapping[str, Any]) -> Composition:
    planes = []
    for plane in _require(data, "planes", list):
        try:
            size = Size[_require(plane, "size", str)]
        except KeyError:
            raise ValueError(f"unknown size {plane['size']!r}") from None
        subjects = tuple(subject_from_dict(s) for s in _require(plane, "subjects", list))
        planes.append(FlatComposition(size, subjects))
    return Composition(tuple(planes))


def event_from_dict(data: Mapping[str, Any]) -> ScreenEvent:
    tag = _require(data, "event", str)
    if tag == "lock":
        return Lock()
    if tag in ("pan-with", "dolly-with", "crane-with"):
        cls = {"pan-with": PanWith, "dolly-with": DollyWith, "crane-with": CraneWith}[tag]
        return cls(subject_from_dict(_require(data, "subject", dict)))
    if tag in ("pan-to", "dolly-to", "crane-to", "continue-to"):
        cls = {"pan-to": PanTo, "dolly-to": DollyTo,
               "crane-to": CraneTo, "continue-to": ContinueTo}[tag]
        return cls(composition_from_dict(_require(data, "target", dict)))
    if tag == "speak":
        return Speak(_require(data, "actor", str))
    if tag == "react":
        to = _require(data, "to", str) if "to" in data else None
        return React(_require(data, "actor", str), to)
    if tag in ("use", "touch"):
        cls = Use if tag == "use" else Touch
        return cls(_require(data, "actor", str), _require(data, "prop", str))
    if tag == "cross":
        return Cross(_require(data, "actor", str), _require(data, "other", str))
    if tag == "enter":
        return Enter(
            _require(data, "actor", str),
            Side(_require(data, "side", str)),
            composition_from_dict(_require(data, "target", dict)),
        )
    if tag == "exit":
        return Exit(_require(data, "actor", str), Side(_require(data, "side", str)))
    if tag == "move":
        return Move(
            _require(data, "actor", str),
            composition_from_dict(_require(data, "target", dict)),
        )
    raise ValueError(f"unknown event tag {tag!r}")


def shot_from_dict(data: Mapping[str, Any]) -> Shot:
    initial = composition_from_dict(_require(data, "initial", dict))
    events = tuple(event_from_dict(e) for e in data.get("events", []))
    return Shot(initial, events)


def storyboard_from_dict(data: Mapping[str, Any]) -> Storyboard:
    version = data.get("psl_schema", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported psl_schema {version!r}")
    shots = tuple(shot_from_dict(s) for s in _require(data, "shots", list))
    joins = tuple(ShotTransition(j) for j in data.get("joins", []))
    return Storyboard(shots, joins)
