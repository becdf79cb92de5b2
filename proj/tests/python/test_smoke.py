"""Smoke tests for the python module built from the C++ core."""

import numpy as np
import pytest

import gridforge as gf


def make_world():
    return {
        "grid_size": 6,
        "agent": {"row": 2, "col": 4, "heading": "east"},
        "objects": [
            {"row": 5, "col": 1, "shape": "circle", "color": "red", "size": 2},
            {"row": 0, "col": 0, "shape": "square", "color": "blue", "size": 4},
        ],
        "target": {"row": 5, "col": 1},
    }


def test_enumerate_parse_realize_round_trip():
    commands = gf.enumerate_commands()
    assert len(commands) == 1035
    assert ["walk", "to", "the", "red", "small", "circle", "cautiously"] in commands
    for tokens in commands[:50]:
        frame = gf.parse(tokens)
        order = "color_first" if tokens != gf.realize(frame, "size_first") else "size_first"
        assert gf.realize(frame, order) == tokens


def test_parse_frame_fields():
    frame = gf.parse(["pull", "a", "big", "yellow", "square", "while", "spinning"])
    assert frame == {
        "verb": "pull",
        "adverb": "while_spinning",
        "size": "big",
        "color": "yellow",
        "shape": "square",
    }
    with pytest.raises(gf.CommandParseError):
        gf.parse(["walk", "to", "the", "wampimuk"])


def test_encode_decode_state():
    world = make_world()
    tensor = gf.encode_state(world)
    assert tensor.shape == (6, 6, 16)
    assert tensor.dtype == np.uint8
    assert tensor.sum() == 2 + 3 * len(world["objects"])
    back = gf.decode_state(tensor, target=(5, 1))
    by_cell = lambda o: (o["row"], o["col"])  # noqa: E731 - decoded objects come cell-sorted
    assert sorted(back.pop("objects"), key=by_cell) == sorted(world.pop("objects"), key=by_cell)
    assert back == world


def test_plan_execute_goal_manner():
    world = make_world()
    frame = gf.parse(["walk", "to", "the", "circle"])

    horizontal = gf.plan(frame, world, "horizontal_first")
    assert horizontal.count("L_turn") == 3 and horizontal.count("R_turn") == 0
    vertical = gf.plan(frame, world, "vertical_first")
    assert vertical.count("R_turn") == 2 and vertical.count("L_turn") == 0

    golds = gf.gold_set(frame, world)
    assert sorted(golds) == sorted([horizontal, vertical])

    run = gf.execute(world, horizontal)
    assert run["ok"]
    assert run["final_world"]["agent"]["row"] == 5
    assert run["final_world"]["agent"]["col"] == 1
    assert gf.goal_satisfied(frame, world, run["final_world"])

    assert gf.exact_match(vertical, golds)
    assert not gf.exact_match(horizontal[:-1], golds)
    assert gf.semantic_match(horizontal, frame, world)
    assert not gf.semantic_match([], frame, world)


def test_manner_checks():
    assert gf.manner_satisfied("cautiously", ["L_turn", "R_turn", "R_turn", "L_turn", "walk"])
    assert not gf.manner_satisfied("cautiously", ["walk"])
    assert gf.manner_satisfied("hesitantly", ["walk", "stay"])
    assert gf.manner_satisfied("while_spinning", ["L_turn"] * 4 + ["walk"])


def test_execution_errors_are_reported():
    world = make_world()
    run = gf.execute(world, ["push"])  # nothing under the agent
    assert not run["ok"]
    assert run["error_index"] == 0
    assert "push" in run["error"]


def test_sample_world_and_chance():
    frame = gf.parse(["walk", "to", "the", "red", "circle"])
    world = gf.sample_world(frame, "north_east", 4, grid_size=6, seed=5)
    assert gf.validate_world(frame, world)
    assert len(world["objects"]) == 6
    assert gf.chance_level(world) == pytest.approx(1 / 6)

    golds = gf.gold_set(frame, world)
    assert all(gf.semantic_match(g, frame, world) for g in golds)
