import numpy as np
import pytest

import twsketch as tw
from twsketch.datasets import load_dataset, synth_dataset, synth_problem
from twsketch.errors import DataFileError, DomainError


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_basic_load_with_header_and_response_by_name(tmp_path):
    path = write(tmp_path, "a,b\n1,10\n2,20\n3,30\n")
    prob = load_dataset(path, response="b")
    assert isinstance(prob, tw.LeastSquaresProblem)
    assert prob.X.shape == (3, 1)
    np.testing.assert_array_equal(prob.y, [10.0, 20.0, 30.0])


def test_response_by_one_based_index_and_intercept(tmp_path):
    path = write(tmp_path, "a,b\n1,10\n2,20\n3,30\n")
    prob = load_dataset(path, response=2, intercept=True)
    assert prob.X.shape == (3, 2)
    np.testing.assert_array_equal(prob.X.array[:, 0], np.ones(3))
    np.testing.assert_array_equal(prob.X.array[:, 1], [1.0, 2.0, 3.0])


def test_load_as_matrix(tmp_path):
    path = write(tmp_path, "1,2\n3,4\n")
    A = load_dataset(path, has_header=False)
    assert isinstance(A, tw.DenseMatrix)
    np.testing.assert_array_equal(A.array, [[1.0, 2.0], [3.0, 4.0]])


def test_parse_error_names_cell(tmp_path):
    rows = ["1,2,3", "4,5,6", "7,8,9", "10,11,12", "13,14,oops", "16,17,18"]
    path = write(tmp_path, "\n".join(rows) + "\n")
    with pytest.raises(DataFileError) as err:
        load_dataset(path, has_header=False)
    assert err.value.row == 5
    assert err.value.column == 3
    assert "row 5" in str(err.value) and "column 3" in str(err.value)


def test_ragged_row_reported(tmp_path):
    path = write(tmp_path, "1,2\n3,4,5\n")
    with pytest.raises(DataFileError) as err:
        load_dataset(path, has_header=False)
    assert err.value.row == 2


def test_non_finite_cell_reported(tmp_path):
    path = write(tmp_path, "a,b\n1,2\n3,nan\n")
    with pytest.raises(DataFileError) as err:
        load_dataset(path)
    assert err.value.row == 3 and err.value.column == 2


def test_missing_response_column(tmp_path):
    path = write(tmp_path, "a,b\n1,2\n")
    with pytest.raises(DataFileError):
        load_dataset(path, response="target")
    with pytest.raises(DataFileError):
        load_dataset(path, response=5)


def test_empty_file_rejected(tmp_path):
    path = write(tmp_path, "a,b\n")
    with pytest.raises(DataFileError):
        load_dataset(path)


def test_song_year_format(tmp_path):
    # UCI year-prediction layout: response first, 90 covariates, no header
    rng = np.random.default_rng(0)
    data = np.hstack([rng.integers(1950, 2011, size=(200, 1)).astype(float),
                      rng.standard_normal((200, 90))])
    path = tmp_path / "year.csv"
    np.savetxt(path, data, delimiter=",")
    prob = load_dataset(path, response=1, has_header=False, intercept=True)
    assert prob.X.shape == (200, 91)
    np.testing.assert_array_equal(prob.y, data[:, 0])


def test_synth_generators():
    X = synth_dataset("gaussian", 1000, 10, seed=1)
    lev = tw.leverage_summary(tw.thin_svd_factor(X))
    assert lev.max_leverage < 0.05
    X2 = synth_dataset("orthonormal-block", 1000, 10, seed=1)
    lev2 = tw.leverage_summary(tw.thin_svd_factor(X2))
    assert lev2.max_leverage == pytest.approx(1.0, abs=1e-10)
    X3 = synth_dataset("spiked-leverage", 1000, 10, seed=1)
    lev3 = tw.leverage_summary(tw.thin_svd_factor(X3))
    assert lev3.max_leverage > 5 * lev.max_leverage


def test_synth_determinism():
    a = synth_dataset("gaussian", 50, 3, seed=9).array
    b = synth_dataset("gaussian", 50, 3, seed=9).array
    np.testing.assert_array_equal(a, b)
    c = synth_dataset("gaussian", 50, 3, seed=10).array
    assert not np.array_equal(a, c)


def test_synth_domain():
    with pytest.raises(DomainError):
        synth_dataset("gaussian", 5, 5, seed=0)
    with pytest.raises(DomainError):
        synth_dataset("mystery", 10, 2, seed=0)


def test_synth_problem_shapes():
    prob = synth_problem("gaussian", 80, 4, seed=3)
    assert prob.n == 80 and prob.d == 4
    again = synth_problem("gaussian", 80, 4, seed=3)
    np.testing.assert_array_equal(prob.y, again.y)
