import numpy as np
import pytest

from mfplan.exceptions import InvalidKError, InvalidProbabilityError, RejectionValidityWarning
from mfplan.protocols import (
    FIFTEEN_TO_ONE,
    ProtocolSpec,
    geometric_volume,
    output_error,
    parse_protocol,
    rejection_probability,
    required_input_error,
)

BLOCK4 = ProtocolSpec.block(4)


def test_shapes():
    assert (FIFTEEN_TO_ONE.n_inputs, FIFTEEN_TO_ONE.n_outputs) == (15, 1)
    assert (BLOCK4.n_inputs, BLOCK4.n_outputs) == (20, 4)
    assert ProtocolSpec.block(10).n_inputs == 38


@pytest.mark.parametrize("k", [0, 1, 3, -2, 7])
def test_block_requires_even_k(k):
    with pytest.raises(InvalidKError):
        ProtocolSpec.block(k)


def test_output_error():
    assert output_error(FIFTEEN_TO_ONE, 1e-3) == pytest.approx(3.5e-8)
    assert output_error(BLOCK4, 1e-2) == pytest.approx(1.3e-3)
    assert output_error(FIFTEEN_TO_ONE, 0.0) == 0.0
    assert output_error(BLOCK4, 0.9) == 1.0


def test_required_input_error_examples():
    assert required_input_error(FIFTEEN_TO_ONE, 1e-15, 1.0) == pytest.approx(2.43e-6, rel=2e-3)
    assert required_input_error(FIFTEEN_TO_ONE, 2.4e-6, 1.0) == pytest.approx(3.25e-3, rel=2e-3)
    assert required_input_error(BLOCK4, 2.6e-7, 1.0) == pytest.approx(1e-4, rel=1e-12)


@pytest.mark.parametrize("spec", [FIFTEEN_TO_ONE, ProtocolSpec.block(2), BLOCK4, ProtocolSpec.block(64)])
@pytest.mark.parametrize("eps", [2.0**-5, 0.5, 1.0, 7.0, 32.0])
def test_round_trip(spec, eps):
    for target in np.geomspace(1e-20, 1e-2, 25):
        p = required_input_error(spec, target, eps)
        assert output_error(spec, p) == pytest.approx(target / (1 + eps), rel=1e-12)


def test_required_input_error_is_monotone():
    targets = np.geomspace(1e-20, 1e-2, 50)
    values = [required_input_error(BLOCK4, t, 1.0) for t in targets]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_required_input_error_rejects_bad_arguments():
    with pytest.raises(InvalidProbabilityError):
        required_input_error(FIFTEEN_TO_ONE, 1.5, 1.0)
    with pytest.raises(ValueError):
        required_input_error(FIFTEEN_TO_ONE, 1e-6, 0.0)


def test_geometric_volume():
    assert geometric_volume(FIFTEEN_TO_ONE) == 192
    assert geometric_volume(BLOCK4) == 600
    assert geometric_volume(ProtocolSpec.block(2)) == 408
    for k in range(4, 130, 2):
        assert geometric_volume(ProtocolSpec.block(k)) - geometric_volume(ProtocolSpec.block(k - 2)) == 192


def test_rejection_probability():
    assert rejection_probability(BLOCK4, 1e-3) == pytest.approx(0.02)
    assert rejection_probability(FIFTEEN_TO_ONE, 1e-2) == pytest.approx(0.15)
    assert rejection_probability(ProtocolSpec.block(2), 0.0) == 0.0


def test_rejection_probability_warns_outside_first_order():
    with pytest.warns(RejectionValidityWarning):
        assert rejection_probability(BLOCK4, 0.1) == 1.0


def test_transversality_flag():
    assert ProtocolSpec.block(2).has_transversal_sx
    assert ProtocolSpec.block(6).has_transversal_sx
    assert not BLOCK4.has_transversal_sx


def test_parse_protocol():
    assert parse_protocol("15-1") is FIFTEEN_TO_ONE
    assert parse_protocol("block:4") == BLOCK4
    assert parse_protocol("block(6)").label == "block(6)"
    with pytest.raises(InvalidKError):
        parse_protocol("block:5")
    with pytest.raises(ValueError):
        parse_protocol("20-4")
