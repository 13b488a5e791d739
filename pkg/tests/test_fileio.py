"""File formats: dataset JSON, dictionary/weight/basis records, CSV schemas."""

import json
import os

import numpy as np
import pytest

import koopid
from koopid import fileio
from koopid.errors import InvalidInputError


def small_dataset():
    m = koopid.graphon_model(64)
    return m, koopid.generate_pairs(m, koopid.ICFamily.GRAPHON, 2, 4, 0.5, seed=1)


class TestAtomicWrite:
    def test_writes_and_replaces(self, tmp_path):
        p = tmp_path / "out.txt"
        fileio.atomic_write_text(str(p), "one")
        fileio.atomic_write_text(str(p), "two")
        assert p.read_text() == "two"
        assert list(tmp_path.iterdir()) == [p]  # no temp files left behind


class TestDatasetRoundTrip:
    def test_bit_exact_values(self, tmp_path):
        _, ds = small_dataset()
        p = tmp_path / "d.json"
        fileio.write_dataset(str(p), ds)
        back = fileio.read_dataset(str(p))
        assert back.sampling_time == ds.sampling_time
        assert back.grid == ds.grid
        assert len(back) == len(ds)
        for (u1, v1), (u2, v2) in zip(ds.pairs, back.pairs):
            assert np.array_equal(u1.values, u2.values)
            assert np.array_equal(v1.values, v2.values)

    def test_preserves_provenance_and_dirichlet(self, tmp_path):
        m = koopid.burgers_model(64)
        ds = koopid.generate_pairs(m, koopid.ICFamily.BURGERS, 2, 4, 0.2, seed=2)
        p = tmp_path / "d.json"
        fileio.write_dataset(str(p), ds)
        back = fileio.read_dataset(str(p))
        assert back.provenance["seed"] == 2
        assert back.provenance["burn_in"] == 0.0
        assert back.pairs[0][0].dirichlet is True

    def test_deterministic_serialization(self, tmp_path):
        _, ds = small_dataset()
        assert fileio.dataset_to_json(ds) == fileio.dataset_to_json(ds)


class TestRecordRoundTrips:
    @pytest.mark.parametrize(
        "term",
        [
            koopid.Constant(),
            koopid.MonomialDerivative(2, 3),
            koopid.GraphonKernel(koopid.KernelSpec(-1.0, 0.7, 0.3)),
        ],
    )
    def test_term(self, term):
        assert fileio.term_from_record(fileio.term_to_record(term)) == term

    @pytest.mark.parametrize(
        "weight",
        [
            koopid.Bump(5.0),
            koopid.Bump(5.0, recentered=True),
            koopid.PowerLaw(2),
            koopid.ConstantWeight(),
        ],
    )
    def test_weight(self, weight):
        assert fileio.weight_from_record(fileio.weight_to_record(weight)) == weight

    @pytest.mark.parametrize(
        "spec",
        [
            koopid.InnerProductPower(0.3, 0.7, 2, 3),
            koopid.PointEvaluation(0.25),
            koopid.LiftedTerm(koopid.MonomialDerivative(1, 0), koopid.PowerLaw(2)),
        ],
    )
    def test_functional(self, spec):
        assert fileio.functional_from_record(fileio.functional_to_record(spec)) == spec

    def test_unknown_kind_rejected(self):
        with pytest.raises(InvalidInputError):
            fileio.term_from_record({"kind": "mystery"})


class TestWeightSpecParsing:
    def test_shorthand_forms(self):
        assert fileio.parse_weight_spec("constant") == koopid.ConstantWeight()
        assert fileio.parse_weight_spec("bump:5") == koopid.Bump(5.0)
        assert fileio.parse_weight_spec("bump:5:recentered") == koopid.Bump(5.0, recentered=True)
        assert fileio.parse_weight_spec("power:2") == koopid.PowerLaw(2)

    def test_malformed_rejected(self):
        with pytest.raises(InvalidInputError):
            fileio.parse_weight_spec("gaussian:1")


class TestModelFile:
    def test_custom_model_round_trip(self, tmp_path):
        doc = {
            "name": "demo",
            "family": "graphon",
            "grid": {"x_min": 0.0, "x_max": 1.0, "num_points": 64},
            "dictionary": [{"kind": "monomial", "j": 1, "k": 0}],
            "coefficients": [-1.0],
            "boundary": "none",
        }
        p = tmp_path / "m.json"
        p.write_text(json.dumps(doc))
        model, family = fileio.read_model(str(p))
        assert model.name == "demo"
        assert family == koopid.ICFamily.GRAPHON
        assert model.dictionary.coefficients == (-1.0,)

    def test_bad_boundary_rejected(self, tmp_path):
        doc = {
            "grid": {"x_min": 0.0, "x_max": 1.0},
            "dictionary": [{"kind": "monomial", "j": 1, "k": 0}],
            "coefficients": [1.0],
            "boundary": "periodic",
        }
        with pytest.raises(InvalidInputError):
            fileio.model_from_record(doc)


class TestCsvSchemas:
    def test_spectrum_csv_header_and_blank_branch_cut(self):
        from koopid.koopman import edmd_fit, spectrum

        result = spectrum(edmd_fit(np.eye(2), np.diag([-0.5, 0.5]), 0.1))
        text = fileio.spectrum_to_csv(result)
        lines = text.strip().split("\n")
        assert lines[0] == "re_lambda_L,im_lambda_L,re_lambda_U,im_lambda_U,residual_score"
        assert len(lines) == 3
        assert any(line.startswith(",,") for line in lines[1:])  # branch-cut row

    def test_identification_csv_includes_truth_errors(self):
        m = koopid.graphon_model(64)
        ds = koopid.generate_pairs(m, koopid.ICFamily.GRAPHON, 5, 10, 0.5, seed=1)
        cand = koopid.Dictionary(koopid.graphon_model(64).dictionary.terms)
        result = koopid.lifting_identify(ds, cand, koopid.PowerLaw(2))
        truth = koopid.true_coefficients(koopid.graphon_model(64), cand)
        text = fileio.identification_to_csv(result, truth)
        lines = text.strip().split("\n")
        assert lines[0] == "term_index,term_descriptor,c_true,c_hat,abs_error"
        assert len(lines) == 8
