"""Tests for the oddquad command-line interface."""

from __future__ import annotations

import typing as typ

import msgspec.json as msjson
import pytest

from oddquad import catalog, flags, interchange
from oddquad.cli import main
from oddquad.extensions import decompose_weak_filiform

if typ.TYPE_CHECKING:
    from pathlib import Path


def _write_entry(tmp_path: Path, key: str) -> Path:
    entry = catalog.build(key)
    path = tmp_path / f"{key.replace(':', '_')}.json"
    path.write_bytes(interchange.dump_algebra(entry.algebra, entry.form))
    return path


class TestVerify:
    """The ``verify`` verb."""

    def test_valid_algebra_passes(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """``g6:0`` passes every check."""
        path = _write_entry(tmp_path, "g6:0")
        assert main(("verify", str(path))) == 0
        out = capsys.readouterr().out
        assert "jacobi: pass" in out
        assert "non-degeneracy: pass" in out

    def test_jacobi_failure_exits_one(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """A broken Jacobi identity is a failed verification."""
        path = tmp_path / "broken.json"
        path.write_text(
            '{"even": ["X"], "odd": ["e"], "brackets": ['
            '{"x": "e", "y": "e", "value": {"X": "1"}}, '
            '{"x": "X", "y": "e", "value": {"e": "1"}}]}'
        )
        assert main(("verify", str(path))) == 1
        assert "J(e, e, e)" in capsys.readouterr().out

    def test_malformed_document_exits_two(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Unparsable input is reported on stderr."""
        path = tmp_path / "bad.json"
        path.write_text('{"even": "X"}')
        assert main(("verify", str(path))) == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_file_exits_two(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Unreadable paths are input errors."""
        assert main(("verify", str(tmp_path / "absent.json"))) == 2
        assert "could not read" in capsys.readouterr().err

    def test_json_certificate(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """``--emit-json`` writes the certificate document."""
        path = _write_entry(tmp_path, "abelian2")
        assert main(("verify", str(path), "--emit-json")) == 0
        document = msjson.decode(capsys.readouterr().out)
        assert document["passed"] is True


class TestAnalyze:
    """The ``analyze`` verb."""

    def test_g8_2(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """``g8:2`` has a two-dimensional center and a weak filiform flag."""
        path = _write_entry(tmp_path, "g8:2")
        assert main(("analyze", str(path))) == 0
        out = capsys.readouterr().out
        assert "center: 2 (1 even, 1 odd)" in out
        assert "weak filiform: True" in out
        assert "  e4 = e4" in out

    def test_json(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """The JSON analysis lists the flag representatives."""
        path = _write_entry(tmp_path, "g6:1")
        assert main(("analyze", str(path), "--emit-json")) == 0
        document = msjson.decode(capsys.readouterr().out)
        assert document["weak_filiform"] is True
        assert document["flag"] == ["e3"]


class TestExtendAndDecompose:
    """The ``extend`` and ``decompose`` verbs."""

    def test_extend_rebuilds_dimension_eight(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Data read off ``g8:0`` extends ``g6:0`` back to dimension 8."""
        entry = catalog.build("g8:0")
        assert entry.form is not None
        flag = flags.detect_weak_filiform(entry.algebra).flag
        assert flag is not None
        step = decompose_weak_filiform(entry.algebra, entry.form, flag)
        algebra_path = tmp_path / "h.json"
        algebra_path.write_bytes(interchange.dump_algebra(step.algebra, step.form))
        data_path = tmp_path / "data.json"
        data_path.write_bytes(interchange.dump_extension_data(step.algebra, step.data))
        assert main(("extend", str(algebra_path), str(data_path))) == 0
        assert "even: X1, X2, X3, e*" in capsys.readouterr().out

    def test_invalid_data_exits_one(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Data failing validation prints the failing check."""
        algebra_path = _write_entry(tmp_path, "g6:0")
        data_path = tmp_path / "zero.json"
        data_path.write_text('{"D": {}}')
        assert main(("extend", str(algebra_path), str(data_path))) == 1
        assert "e_m in D(g0): fail" in capsys.readouterr().out

    def test_tower(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """``--tower`` prints every step down to a flag of length two."""
        path = _write_entry(tmp_path, "g8:0")
        assert main(("decompose", str(path), "--tower")) == 0
        out = capsys.readouterr().out
        assert "step 1: dimension 6" in out
        assert "step 2: dimension 4" in out
        assert "lambda0 = " in out

    def test_not_weak_filiform_exits_one(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """A single decomposition needs a weak filiform input."""
        path = _write_entry(tmp_path, "abelian2")
        assert main(("decompose", str(path))) == 1
        assert "not weak filiform" in capsys.readouterr().out


class TestOtherVerbs:
    """``derivations``, ``catalog``, ``classify`` and ``search``."""

    def test_derivations(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """``g6:0`` has four odd skew derivations."""
        path = _write_entry(tmp_path, "g6:0")
        assert main(("derivations", str(path))) == 0
        assert capsys.readouterr().out.startswith("dimension 4")

    def test_derivations_need_a_form(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Documents without a form are refused."""
        path = _write_entry(tmp_path, "model_filiform:4")
        assert main(("derivations", str(path))) == 2
        assert "document carries no form" in capsys.readouterr().err

    def test_catalog_list_and_emit(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Keys are listed one per line and emitted as algebra documents."""
        assert main(("catalog", "list")) == 0
        assert "g8:2" in capsys.readouterr().out.splitlines()
        assert main(("catalog", "emit", "g6:1")) == 0
        alg, form = interchange.load_algebra(capsys.readouterr().out.encode())
        assert alg.same_constants(catalog.build("g6:1").algebra)
        assert form is not None

    @pytest.mark.parametrize("argv", [("catalog", "emit"), ("catalog", "emit", "g9")])
    def test_catalog_bad_key(
        self, argv: tuple[str, ...], capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Missing or unknown keys are input errors."""
        assert main(argv) == 2
        assert "unknown catalog key" in capsys.readouterr().err

    def test_classify(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Dimension 6 has two classes."""
        assert main(("classify", "--dim", "6")) == 0
        out = capsys.readouterr().out
        assert out.rstrip().endswith("2 classes")
        assert "g1_6 (c != 0) = g6:1" in out

    def test_search(self, capsys: pytest.CaptureFixture[str]) -> None:
        """No filiform candidate survives with a two-dimensional even part."""
        assert main(("search", "--n-even", "2")) == 0
        assert capsys.readouterr().out.rstrip().endswith("0 classes")

    def test_search_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        """The one-dimensional search reports three hits in two classes."""
        assert main(("search", "--n-even", "1", "--emit-json")) == 0
        document = msjson.decode(capsys.readouterr().out)
        assert document["hits"] == 3
        assert len(document["classes"]) == 2

    def test_search_over_limit_exits_two(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """An assignment limit below the grid size is an input error."""
        assert main(("search", "--n-even", "1", "--limit", "0")) == 2
        assert "limit is 0" in capsys.readouterr().err

    def test_grid_without_signs_is_rejected(self) -> None:
        """argparse refuses grids missing -1, 0 or 1."""
        with pytest.raises(SystemExit) as excinfo:
            main(("search", "--n-even", "1", "--grid", "0,1"))
        assert excinfo.value.code == 2
