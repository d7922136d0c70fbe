import io

import numpy as np
import pytest

from uclinalg.errors import MatrixParseError
from uclinalg.matrixio import read_matrix, write_blocks, format_blocks, normalize_format


def write_text(path, text: str) -> str:
    path.write_text(text)
    return str(path)


class TestCsv:

    def test_read(self, tmp_path):
        path = write_text(tmp_path / 'a.csv', "0.5,-0.5\n1e-3, 2\n")
        assert read_matrix(path).tolist() == [[0.5, -0.5], [0.001, 2.0]]

    def test_single_column(self, tmp_path):
        path = write_text(tmp_path / 'a.csv', "1\n2\n3\n")
        assert read_matrix(path).shape == (3, 1)

    def test_exact_round_trip_is_bit_identical(self, tmp_path, rng):
        values = rng.standard_normal((4, 3)) * 10.0 ** rng.randint(-20, 20, (4, 3))
        canonical = format_blocks([values], exact=True)
        path = write_text(tmp_path / 'a.csv', canonical)
        parsed = read_matrix(path)
        assert np.array_equal(parsed, values)
        assert format_blocks([parsed], exact=True) == canonical

    def test_blocks_are_separated_by_empty_line(self):
        text = format_blocks([np.array([1.0, 2.0]), np.array([[3.0, 4.0]])])
        assert text == "1\n2\n\n3,4\n"

    @pytest.mark.parametrize('text', ["", "1,2\n3\n", "1,a\n", "1,nan\n", "1,inf\n", "1,,2\n"])
    def test_rejects_malformed(self, tmp_path, text):
        path = write_text(tmp_path / 'a.csv', text)
        with pytest.raises(MatrixParseError):
            read_matrix(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(MatrixParseError):
            read_matrix(str(tmp_path / 'missing.csv'))


class TestMatrixMarket:

    def test_read_array(self, tmp_path):
        path = write_text(tmp_path / 'a.mtx', "%%MatrixMarket matrix array real general\n2 2\n1\n3\n2\n4\n")
        assert read_matrix(path, 'mm').tolist() == [[1.0, 2.0], [3.0, 4.0]]

    def test_read_coordinate_is_densified(self, tmp_path):
        text = "%%MatrixMarket matrix coordinate real general\n% comment\n2 3 2\n1 1 5.0\n2 3 -1.5\n"
        path = write_text(tmp_path / 'a.mtx', text)
        assert read_matrix(path, 'matrixmarket').tolist() == [[5.0, 0.0, 0.0], [0.0, 0.0, -1.5]]

    def test_read_integer_field(self, tmp_path):
        path = write_text(tmp_path / 'a.mtx', "%%MatrixMarket matrix array integer general\n1 2\n7\n-8\n")
        assert read_matrix(path, 'mm').tolist() == [[7.0, -8.0]]

    @pytest.mark.parametrize('header', ["%%MatrixMarket matrix array complex general\n1 1\n1 0\n",
                                        "%%MatrixMarket matrix array real symmetric\n1 1\n1\n"])
    def test_rejects_unsupported_headers(self, tmp_path, header):
        path = write_text(tmp_path / 'a.mtx', header)
        with pytest.raises(MatrixParseError):
            read_matrix(path, 'mm')

    def test_rejects_garbage(self, tmp_path):
        path = write_text(tmp_path / 'a.mtx', "1,2\n3,4\n")
        with pytest.raises(MatrixParseError):
            read_matrix(path, 'mm')

    def test_write_then_read(self, tmp_path, rng):
        values = rng.standard_normal((3, 2))
        path = write_text(tmp_path / 'a.mtx', format_blocks([values], 'mm', exact=True))
        assert np.array_equal(read_matrix(path, 'mm'), values)

    def test_vectors_are_written_as_columns(self, tmp_path):
        path = write_text(tmp_path / 'a.mtx', format_blocks([np.array([1.0, 2.0, 3.0])], 'mm'))
        assert read_matrix(path, 'mm').shape == (3, 1)


def test_default_precision_is_six_significant_digits():
    assert format_blocks([np.array([[1 / 3, 123456789.0]])]) == "0.333333,1.23457e+08\n"


def test_rejects_complex_blocks():
    with pytest.raises(TypeError):
        write_blocks(io.StringIO(), [np.array([1j])])


def test_unknown_format():
    with pytest.raises(ValueError):
        normalize_format('json')
