"""Rendering: layout geometry and deterministic SVG sketches."""
from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import corpus_paths, parse_ok
from psl.ast import Profile, Size
from psl.compiler import shot_frames
from psl.render import (
    CAPTION_BAND,
    FRAME_HEIGHT,
    FRAME_WIDTH,
    layout,
    render_frame,
    render_storyboard,
)
from psl.stylesheet import DEFAULT_STYLESHEET


def frame_of(text):
    return shot_frames(parse_ok(text).shots[0])[0]


def test_layout_positions_and_heights():
    l = layout(frame_of("MS on Anna and Boris."))
    assert (l.width, l.height) == (FRAME_WIDTH, FRAME_HEIGHT)
    assert [f.name for f in l.figures] == ["Anna", "Boris"]
    assert [f.x for f in l.figures] == [Fraction(1, 3), Fraction(2, 3)]
    heights = DEFAULT_STYLESHEET.figure_height_by_size
    assert all(f.height == heights[Size.MS] for f in l.figures)
    assert all(f.facing is Profile.FRONT for f in l.figures)
    assert l.caption == "MS on Anna front at 1/3 and Boris front at 2/3"


def test_layout_draws_background_planes_first():
    l = layout(frame_of("MCU on Anna, LS on Boris and Carla."))
    assert [f.name for f in l.figures] == ["Boris", "Carla", "Anna"]
    assert [f.plane for f in l.figures] == [1, 1, 0]


def test_layout_requires_a_fully_specified_composition():
    bare = parse_ok("MS on Anna.").shots[0].initial
    with pytest.raises(ValueError):
        layout(bare)


def test_render_frame_structure():
    l = layout(frame_of("MS on Anna and Boris."))
    svg = render_frame(l)
    assert svg.startswith("<svg")
    assert svg.endswith("\n")
    assert f'width="{FRAME_WIDTH}"' in svg
    assert f'height="{FRAME_HEIGHT + CAPTION_BAND}"' in svg
    assert svg.count("<circle") == 2  # one head per figure
    assert 'clip-path="url(#frame-clip)"' in svg
    assert "MS on Anna front at 1/3 and Boris front at 2/3" in svg
    assert "-0.00" not in svg


def test_render_frame_stamp():
    l = layout(frame_of("MS on Anna."))
    assert "in transition" not in render_frame(l)
    assert "in transition" in render_frame(l, stamp="in transition")


def test_back_profile_has_no_nose_tick():
    facing = render_frame(layout(frame_of("MS on Anna.")))
    away = render_frame(layout(frame_of("MS on Anna back.")))
    # the nose is the only extra line; count line elements
    assert facing.count("<line") == away.count("<line") + 1


def test_taller_sizes_pin_the_head_instead_of_the_feet():
    # a BCU figure is 1.8 frame heights tall: its head stays near the top
    bcu = render_frame(layout(frame_of("BCU on Anna.")))
    vls = render_frame(layout(frame_of("VLS on Anna.")))
    assert bcu != vls
    assert bcu.count("<circle") == vls.count("<circle") == 1


def test_figure_count_matches_subject_count_across_the_corpus():
    for path in corpus_paths():
        sb = parse_ok(path.read_text(encoding="utf-8"))
        for shot in sb.shots:
            for frame in shot_frames(shot):
                l = layout(frame)
                assert len(l.figures) == len(frame.subject_names()), path.name


def test_rendering_is_deterministic():
    sb = parse_ok("MS on Anna and Boris, Anna crosses Boris.\nCut to CU on Anna.")
    first = render_storyboard(sb)
    second = render_storyboard(sb)
    assert [(f.filename, f.svg) for f in first] == [(f.filename, f.svg) for f in second]


def test_filenames_are_per_shot_counters():
    sb = parse_ok("MS on Anna and Boris, Anna crosses Boris.\nCut to CU on Anna.")
    frames = render_storyboard(sb)
    assert [f.filename for f in frames] == [
        "shot01_frame01.svg",  # the cross, stamped
        "shot01_frame02.svg",  # the settled two-shot
        "shot02_frame01.svg",  # after the cut
    ]


def test_zero_length_cut_markers_are_not_rendered():
    sb = parse_ok("MS on Anna.\nCut to CU on Anna.")
    frames = render_storyboard(sb)
    assert len(frames) == 2


def test_in_transition_frames_are_stamped():
    sb = parse_ok("MS on Anna and Boris, Anna crosses Boris.")
    frames = render_storyboard(sb)
    assert "in transition" in frames[0].svg
    assert "in transition" not in frames[1].svg


def test_every_corpus_frame_renders():
    for path in corpus_paths():
        sb = parse_ok(path.read_text(encoding="utf-8"))
        for frame in render_storyboard(sb):
            assert frame.svg.startswith("<svg"), path.name
            assert frame.filename.endswith(".svg")
