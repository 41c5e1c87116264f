import pytest

import dnamem


def reference_layout():
    spec = dnamem.DesignSpec()
    spec.n_bits = 2
    spec.cut_positions = [18, 52]
    spec.total_length = 77
    return dnamem.design_carrier(spec, seed=7)


SIGNATURES = {
    "00": [18, 25, 34],
    "01": [25, 52],
    "10": [18, 59],
    "11": [77],
}


def test_design_reproduces_reference_signatures():
    layout = reference_layout()
    assert len(layout.carrier) == 77
    assert layout.n_bits() == 2
    assert layout.address_len == 14
    for bits, lengths in SIGNATURES.items():
        assert dnamem.expected_fragments(layout, bits) == lengths
        assert dnamem.digest(dnamem.anneal(layout, bits), dnamem.ecori()) == lengths


def test_gel_roundtrip_and_text():
    layout = reference_layout()
    for bits in SIGNATURES:
        fragments = dnamem.digest(dnamem.anneal(layout, bits), dnamem.ecori())
        lane = dnamem.render_gel(fragments, resolution_bp=2)
        assert dnamem.decode_gel(lane, layout, dnamem.ecori()) == bits
    assert "bp" in dnamem.gel_text(lane)


def test_mirror_layout_is_ambiguous():
    spec = dnamem.DesignSpec()
    spec.n_bits = 2
    spec.cut_positions = [20, 80]
    spec.total_length = 100
    layout = dnamem.design_carrier(spec, seed=9)

    report = dnamem.verify_decodable(layout)
    assert not report.decodable()
    assert ("01", "10") in [tuple(c) for c in report.collisions]

    lane = dnamem.render_gel(dnamem.digest(dnamem.anneal(layout, "01"), dnamem.ecori()))
    with pytest.raises(dnamem.DecodeError) as err:
        dnamem.decode_gel(lane, layout, dnamem.ecori())
    assert err.value.kind == "ambiguous"
    assert err.value.candidates == ["01", "10"]


def test_palindromic_pore_read_ignores_orientation():
    spec = dnamem.DesignSpec()
    spec.n_bits = 2
    spec.address_len = 12
    base = dnamem.design_carrier(spec, seed=11)
    pal = dnamem.palindromize(base, center_spacer=30, seed=12)
    assert pal.palindromic

    params = dnamem.TraceParams()
    studded = dnamem.stud(dnamem.anneal(pal, "01"))
    for entry in (dnamem.Orientation.Forward, dnamem.Orientation.Reverse):
        trace = dnamem.translocate(studded, params, entry, seed=5)
        events = dnamem.detect_events(trace, dnamem.default_detection(params))
        assert dnamem.decode_trace(events, pal, params) == "01"


def test_infeasible_design_raises():
    spec = dnamem.DesignSpec()
    spec.n_bits = 2
    spec.cut_positions = [8, 20]
    spec.total_length = 40
    with pytest.raises(dnamem.DesignError) as err:
        dnamem.design_carrier(spec, seed=1)
    assert err.value.constraint


def test_oligo_written_one_carries_the_variant_field():
    layout = reference_layout()
    oligo = dnamem.make_oligo(layout, slot_index=0, bit=1)
    assert "GTTAAC" in str(oligo.physical())
    assert oligo.bit == 1


def test_sequence_helpers():
    assert str(dnamem.complement("GAATTC")) == "CTTAAG"
    assert str(dnamem.reverse_complement("GAATTC")) == "GAATTC"
    assert dnamem.find_sites("GGAATTCC", "GAATTC") == [1]
    assert dnamem.hamming("GAATTC", "GTTAAC") == 4


def test_layout_json_roundtrip():
    layout = reference_layout()
    text = dnamem.layout_to_json(layout)
    back = dnamem.layout_from_json(text)
    assert str(back.carrier) == str(layout.carrier)
    assert back.address_len == layout.address_len
    assert len(back.slots) == 2


def test_same_seed_same_carrier():
    a = reference_layout()
    b = reference_layout()
    assert str(a.carrier) == str(b.carrier)

    spec = dnamem.DesignSpec()
    spec.n_bits = 2
    spec.cut_positions = [18, 52]
    spec.total_length = 77
    c = dnamem.design_carrier(spec, seed=8)
    assert str(c.carrier) != str(a.carrier)
