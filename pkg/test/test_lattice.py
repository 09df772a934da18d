"""Tests for the Picard lattice, the root data and the Weyl group words."""
import numpy as np
import pytest

from qracah_gaps.errors import UnknownTokenError
from qracah_gaps.lattice import ABSTRACT_EVOLUTION, CONJUGATOR_WORD, E6_DATA, E7_DATA, ENSEMBLE_EVOLUTION, ENSEMBLE_STEP_CONJUGATOR, ENSEMBLE_STEP_WORD, \
    ENSEMBLE_TRANSLATION, MATCHED_EVOLUTION, PHI_TRANSLATION, PHI_WORD, PSI_TRANSLATION, PSI_WORD, STANDARD_EVOLUTION, Monomial, PicardClass, anticanonical, \
    apply_word, cartan_matrix, ensemble_root_variables, inverse_word, is_conjugate, pair, parse_word, reflect, root_variable_product, root_variable_shift, \
    standard_root_variables, translation_vector, verification_report, word_matrix


def test_verification_report_passes():
    report = verification_report()
    assert report
    assert [name for name, passed in report if not passed] == []


class TestPicardClass:
    def test_parse_and_repr(self):
        divisor = PicardClass.parse('Hf + Hg - F1 - 2F5')
        assert divisor.coordinates.tolist() == [1, 1, -1, 0, 0, 0, -2, 0, 0, 0]
        assert repr(divisor) == 'Hf + Hg - F1 - 2F5'
        assert repr(-divisor) == '-Hf - Hg + F1 + 2F5'

    @pytest.mark.parametrize('text', ['', 'Hf + X', 'F9', '2'])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            PicardClass.parse(text)

    def test_pairing(self):
        hf, hg, f1 = PicardClass.parse('Hf'), PicardClass.parse('Hg'), PicardClass.parse('F1')
        assert pair(hf, hg) == 1
        assert pair(hf, hf) == 0
        assert pair(f1, f1) == -1
        assert pair(anticanonical(), anticanonical()) == 0

    def test_arithmetic(self):
        first = PicardClass.parse('Hf - F1')
        assert first + first == 2 * first
        assert first - first == PicardClass([0] * 10)


@pytest.mark.parametrize('data', [E7_DATA, E6_DATA], ids=['E7', 'E6'])
def test_root_data(data):
    assert np.array_equal(cartan_matrix(data), data.expected_cartan())
    assert data.null_root() == anticanonical()
    for index, root in enumerate(data.symmetry_roots):
        assert reflect(index, root, data) == -root
        assert np.array_equal(word_matrix([index, index], data), np.eye(10, dtype=np.int64))


def test_translations():
    assert translation_vector(PHI_WORD, E7_DATA) == PHI_TRANSLATION
    assert translation_vector(PSI_WORD, E7_DATA) == PSI_TRANSLATION
    assert translation_vector('w0', E7_DATA) is None
    assert is_conjugate(CONJUGATOR_WORD, PHI_WORD, PSI_WORD, E7_DATA)


def test_words():
    assert parse_word('w1 w2 3', E7_DATA) == [1, 2, 3]
    assert parse_word('r w2', E6_DATA) == ['r', 2]
    assert inverse_word('w1 w2 w3', E7_DATA) == [3, 2, 1]
    product = word_matrix('w1 w2 w3', E7_DATA) @ word_matrix(inverse_word('w1 w2 w3', E7_DATA), E7_DATA)
    assert np.array_equal(product, np.eye(10, dtype=np.int64))
    divisor = PicardClass.parse('Hf')
    assert apply_word('w0', divisor, E7_DATA) == PicardClass.parse('Hg')


@pytest.mark.parametrize('word, data', [('w8', E7_DATA), ('x1', E7_DATA), ('r', E7_DATA), ('w7', E6_DATA)])
def test_unknown_tokens(word, data):
    with pytest.raises(UnknownTokenError):
        parse_word(word, data)


def test_automorphisms_have_no_picard_matrix():
    with pytest.raises(UnknownTokenError):
        word_matrix('r w2', E6_DATA)
    with pytest.raises(UnknownTokenError):
        inverse_word('r w2', E6_DATA)


def test_root_variables():
    variables = ensemble_root_variables()
    assert root_variable_product(variables, E7_DATA.null_coefficients) == Monomial({'q': 1})
    assert root_variable_shift(variables, ENSEMBLE_EVOLUTION) == (1, 0, 1, -1, 0, 0, -1, 1)
    assert root_variable_shift(variables, ABSTRACT_EVOLUTION) == tuple(-value for value in PSI_TRANSLATION)


def test_ensemble_step_translation():
    assert translation_vector(ENSEMBLE_STEP_WORD, E7_DATA) == ENSEMBLE_TRANSLATION
    assert ENSEMBLE_STEP_WORD.startswith(ENSEMBLE_STEP_CONJUGATOR)
    variables = standard_root_variables()
    assert root_variable_shift(variables, STANDARD_EVOLUTION) == (-2, 0, 0, 0, 1, 0, 0, 0)
    assert root_variable_shift(variables, MATCHED_EVOLUTION) == (1, 0, 1, -1, -1, 1, 0, 0)


def test_monomial():
    z = Monomial.generator('z')
    assert (z ** 2 / z) == z
    assert (-z) ** 2 == z ** 2
    assert (-z).evaluate({'z': 3}) == -3
    assert z.shift({'z': 2}) == 2
    assert repr(-(z ** 2)) == '-z^2'
