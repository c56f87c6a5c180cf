import json

import numpy as np
import pytest

from prodbasis.basis import ProductBasis, ProductState
from prodbasis.cli import main
from prodbasis.errors import BasisFileError, NoTileMetadata
from prodbasis.families import cartesian_basis, gen_tiles1, gen_tiles2
from prodbasis.io import basis_from_payload, basis_to_payload, load_basis, save_basis
from prodbasis.render import render_tiles
from prodbasis.sampling import random_unit_vector, stream
from prodbasis.winding import move_from_record, random_wound_basis


def random_basis_like(n_states, d_a, d_b, seed):
    rng = stream(seed, 0)
    states = tuple(
        ProductState(random_unit_vector(rng, d_a), random_unit_vector(rng, d_b), label=f"r{i}")
        for i in range(n_states)
    )
    return ProductBasis(d_a, d_b, states)


def test_round_trip_bit_exact(tmp_path):
    basis = random_basis_like(50, 3, 4, 7)
    path = tmp_path / "basis.json"
    save_basis(basis, path)
    loaded = load_basis(path)
    assert loaded.d_a == 3 and loaded.d_b == 4
    for x, y in zip(basis, loaded):
        assert np.array_equal(x.a, y.a)
        assert np.array_equal(x.b, y.b)
        assert x.label == y.label


def test_round_trip_preserves_metadata(tmp_path):
    basis = gen_tiles2(3, 4)
    path = tmp_path / "g2.json"
    save_basis(basis, path)
    loaded = load_basis(path)
    assert loaded.family == basis.family
    assert all(x.tile_cells == y.tile_cells for x, y in zip(basis, loaded))


def test_round_trip_provenance_moves(tmp_path):
    wound, moves = random_wound_basis(2, 2, 2, 11)
    path = tmp_path / "wound.json"
    save_basis(wound, path)
    loaded = load_basis(path)
    assert len(loaded.provenance) == 2
    recovered = move_from_record(loaded.provenance[-1])
    assert np.array_equal(recovered.u_b, moves[-1].u_b)


def test_load_rejects_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(BasisFileError):
        load_basis(path)
    path.write_text(json.dumps({"format_version": 99, "dims": [2, 2], "states": []}))
    with pytest.raises(BasisFileError):
        load_basis(path)
    payload = basis_to_payload(cartesian_basis(2, 2))
    payload["states"][0]["a"] = [[0.5, 0.0], [0.0, 0.0]]  # not unit norm
    with pytest.raises(BasisFileError):
        basis_from_payload(payload)


def test_render_gentiles1_layout():
    text = render_tiles(gen_tiles1(4))
    lines = text.splitlines()
    # vertical tile V[1,0] sits in column 0, rows 1 and 2
    assert "V[1,0]" in lines[2] and "V[1,0]" in lines[3]
    assert "V[1,0]" not in lines[1] and "V[1,0]" not in lines[4]
    assert any("stopper F omitted" in ln for ln in lines)


def test_render_gentiles2_short_tiles():
    text = render_tiles(gen_tiles2(3, 4))
    lines = text.splitlines()
    # S[0] covers (0,0) and (1,0): both in the first grid row
    assert lines[1].count("S[0]") == 2


def test_render_requires_metadata():
    with pytest.raises(NoTileMetadata):
        render_tiles(cartesian_basis(2, 2))
    with pytest.raises(NoTileMetadata):
        render_tiles(random_basis_like(4, 2, 2, 3))


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_construct_and_verify(tmp_path, capsys):
    out = tmp_path / "g2.json"
    code, stdout, _ = run_cli(["construct", "--family", "gentiles2", "--m", "3", "--n", "4", "--out", str(out)], capsys)
    assert code == 0
    assert "7 states" in stdout

    code, stdout, _ = run_cli(["verify", str(out), "--restarts", "40", "--seed", "5", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(stdout)
    assert payload["report"]["verdict"] == "UPB_Numeric"
    assert payload["report"]["complement_dim"] == 5


def test_cli_construct_rejects_bad_dims(tmp_path, capsys):
    code, _, stderr = run_cli(["construct", "--family", "gentiles1", "--n", "5",
                               "--out", str(tmp_path / "x.json")], capsys)
    assert code == 2
    assert "even n >= 4" in stderr


def test_cli_verify_complete_and_extendible(tmp_path, capsys):
    cart = tmp_path / "cart.json"
    run_cli(["construct", "--family", "cartesian", "--m", "3", "--n", "3", "--out", str(cart)], capsys)
    code, stdout, _ = run_cli(["verify", str(cart)], capsys)
    assert code == 0
    assert "CompleteBasis" in stdout

    partial = ProductBasis(2, 2, cartesian_basis(2, 2).states[:1])
    path = tmp_path / "partial.json"
    save_basis(partial, path)
    code, stdout, _ = run_cli(["verify", str(path), "--restarts", "5"], capsys)
    assert code == 3
    assert "Extendible" in stdout


def test_cli_verify_duplicated_state(tmp_path, capsys):
    st = cartesian_basis(2, 2).states[0]
    dup = ProductBasis(2, 2, (st, st))
    path = tmp_path / "dup.json"
    save_basis(dup, path)
    code, _, stderr = run_cli(["verify", str(path)], capsys)
    assert code == 1
    assert "not orthonormal" in stderr


def test_cli_verify_missing_file(capsys):
    code, _, stderr = run_cli(["verify", "/nonexistent/basis.json"], capsys)
    assert code == 1


def test_cli_render_and_metadata_error(tmp_path, capsys):
    g1 = tmp_path / "g1.json"
    run_cli(["construct", "--family", "gentiles1", "--n", "4", "--out", str(g1)], capsys)
    code, stdout, _ = run_cli(["render", str(g1)], capsys)
    assert code == 0
    assert "V[1,0]" in stdout

    wound = tmp_path / "wound.json"
    run_cli(["wind", "--cartesian", "2", "2", "--moves", "1", "--seed", "3", "--out", str(wound)], capsys)
    code, _, stderr = run_cli(["render", str(wound)], capsys)
    assert code == 1


def test_cli_boundent(tmp_path, capsys):
    g1 = tmp_path / "g1.json"
    run_cli(["construct", "--family", "gentiles1", "--n", "4", "--out", str(g1)], capsys)
    density = tmp_path / "rho.json"
    code, stdout, _ = run_cli(["boundent", str(g1), "--restarts", "40", "--seed", "2",
                               "--out", str(density)], capsys)
    assert code == 0
    payload = json.loads(stdout)
    assert payload["ppt"]["is_ppt"] is True
    assert payload["density"]["rank"] == 7
    assert payload["range_criterion"]["verdict"] == "entangled (range criterion)"
    assert density.exists()

    cart = tmp_path / "cart.json"
    run_cli(["construct", "--family", "cartesian", "--m", "2", "--n", "2", "--out", str(cart)], capsys)
    code, _, stderr = run_cli(["boundent", str(cart)], capsys)
    assert code == 5


def test_cli_wind_unwind_round_trip(tmp_path, capsys):
    wound = tmp_path / "wound.json"
    code, stdout, _ = run_cli(["wind", "--cartesian", "2", "2", "--moves", "1", "--seed", "7",
                               "--out", str(wound)], capsys)
    assert code == 0
    code, stdout, _ = run_cli(["unwind", str(wound), "--depth", "2"], capsys)
    assert code == 0
    payload = json.loads(stdout)
    assert payload["certified"] is True
    assert len(payload["moves"]) <= 2

    cart = tmp_path / "cart.json"
    run_cli(["construct", "--family", "cartesian", "--m", "2", "--n", "3", "--out", str(cart)], capsys)
    code, stdout, _ = run_cli(["unwind", str(cart)], capsys)
    assert code == 0
    assert json.loads(stdout)["moves"] == []


def test_cli_unwind_incomplete_basis(tmp_path, capsys):
    g1 = tmp_path / "g16.json"
    run_cli(["construct", "--family", "gentiles1", "--n", "6", "--out", str(g1)], capsys)
    code, _, stderr = run_cli(["unwind", str(g1)], capsys)
    assert code == 6
    code, _, stderr = run_cli(["wind", str(g1), "--out", str(tmp_path / "w.json")], capsys)
    assert code == 6


def test_cli_json_reports_are_byte_identical(tmp_path, capsys):
    path = tmp_path / "g2.json"
    run_cli(["construct", "--family", "gentiles2", "--m", "3", "--n", "4", "--out", str(path)], capsys)
    args = ["verify", str(path), "--restarts", "30", "--seed", "9", "--format", "json"]
    _, first, _ = run_cli(args, capsys)
    _, second, _ = run_cli(args, capsys)
    assert first == second


def test_cli_pb_seed_env(tmp_path, capsys, monkeypatch):
    path = tmp_path / "g2.json"
    run_cli(["construct", "--family", "gentiles2", "--m", "3", "--n", "4", "--out", str(path)], capsys)
    monkeypatch.setenv("PB_SEED", "31")
    _, via_env, _ = run_cli(["verify", str(path), "--restarts", "20", "--format", "json"], capsys)
    monkeypatch.delenv("PB_SEED")
    _, via_flag, _ = run_cli(["verify", str(path), "--restarts", "20", "--seed", "31", "--format", "json"], capsys)
    assert json.loads(via_env)["report"]["seed"] == 31
    assert via_env == via_flag
