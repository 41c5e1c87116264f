#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "dnamem/assembly.hpp"
#include "dnamem/digest.hpp"
#include "dnamem/errors.hpp"
#include "dnamem/io.hpp"
#include "dnamem/layout.hpp"
#include "dnamem/porescan.hpp"
#include "dnamem/seq.hpp"

namespace py = pybind11;
using namespace dnamem;

namespace {

void bind_errors(py::module_& m) {
    static py::object exc_error = py::exception<Error>(m, "Error");
    static py::object exc_design = py::exception<DesignError>(m, "DesignError", exc_error.ptr());
    static py::object exc_ligation =
        py::exception<LigationError>(m, "LigationError", exc_error.ptr());
    static py::object exc_decode = py::exception<DecodeError>(m, "DecodeError", exc_error.ptr());

    // registered last so it runs first; attaches the structured fields
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DecodeError& e) {
            py::object inst = exc_decode(e.what());
            inst.attr("kind") = e.kind == DecodeError::Kind::Ambiguous ? "ambiguous" : "unreadable";
            inst.attr("candidates") = py::cast(e.candidates);
            PyErr_SetObject(exc_decode.ptr(), inst.ptr());
        } catch (const LigationError& e) {
            py::object inst = exc_ligation(e.what());
            inst.attr("junction") = e.junction;
            inst.attr("left_slot") = e.left_slot;
            inst.attr("right_slot") = e.right_slot;
            PyErr_SetObject(exc_ligation.ptr(), inst.ptr());
        } catch (const DesignError& e) {
            py::object inst = exc_design(e.what());
            inst.attr("constraint") = e.constraint;
            PyErr_SetObject(exc_design.ptr(), inst.ptr());
        } catch (const Error& e) {
            PyErr_SetString(exc_error.ptr(), e.what());
        }
    });
}

void bind_seq(py::module_& m) {
    py::class_<Strand>(m, "Strand")
        .def(py::init<std::string_view>(), py::arg("text"))
        .def("__str__", &Strand::str)
        .def("__repr__", [](const Strand& s) { return "Strand('" + s.str() + "')"; })
        .def("__len__", &Strand::size)
        .def(py::self == py::self)
        .def("subseq", &Strand::subseq, py::arg("start"), py::arg("length"));
    py::implicitly_convertible<py::str, Strand>();

    m.def("complement", py::overload_cast<const Strand&>(&complement), py::arg("strand"));
    m.def("reverse_complement", &reverse_complement, py::arg("strand"));
    m.def("find_sites", &find_sites, py::arg("strand"), py::arg("motif"));
    m.def("hamming", &hamming, py::arg("a"), py::arg("b"));
}

void bind_layout(py::module_& m) {
    py::class_<Interval>(m, "Interval")
        .def_readonly("start", &Interval::start)
        .def_readonly("length", &Interval::length)
        .def("end", &Interval::end)
        .def("__repr__", [](const Interval& iv) {
            return "Interval[" + std::to_string(iv.start) + ", " + std::to_string(iv.end()) + ")";
        });

    py::class_<MemorySlot>(m, "MemorySlot")
        .def_readonly("digit", &MemorySlot::digit)
        .def_readonly("left_addr", &MemorySlot::left_addr)
        .def_readonly("site_start", &MemorySlot::site_start)
        .def_readonly("right_addr", &MemorySlot::right_addr)
        .def("begin", &MemorySlot::begin)
        .def("end", &MemorySlot::end)
        .def("length", &MemorySlot::length)
        .def("cut", &MemorySlot::cut)
        .def("site_center", &MemorySlot::site_center);

    py::class_<CarrierLayout>(m, "CarrierLayout")
        .def_readonly("carrier", &CarrierLayout::carrier)
        .def_readonly("slots", &CarrierLayout::slots)
        .def_readonly("address_len", &CarrierLayout::address_len)
        .def_readonly("min_address_hamming", &CarrierLayout::min_address_hamming)
        .def_readonly("palindromic", &CarrierLayout::palindromic)
        .def("n_bits", &CarrierLayout::n_bits)
        .def("slots_for_digit", &CarrierLayout::slots_for_digit, py::arg("digit"))
        .def("address_seq", &CarrierLayout::address_seq, py::arg("interval"));

    py::class_<DesignSpec>(m, "DesignSpec")
        .def(py::init<>())
        .def_readwrite("n_bits", &DesignSpec::n_bits)
        .def_readwrite("cut_positions", &DesignSpec::cut_positions)
        .def_readwrite("total_length", &DesignSpec::total_length)
        .def_readwrite("lead", &DesignSpec::lead)
        .def_readwrite("gap", &DesignSpec::gap)
        .def_readwrite("tail", &DesignSpec::tail)
        .def_readwrite("address_len", &DesignSpec::address_len)
        .def_readwrite("min_address_hamming", &DesignSpec::min_address_hamming)
        .def_readwrite("max_attempts", &DesignSpec::max_attempts);

    py::class_<DecodabilityReport>(m, "DecodabilityReport")
        .def_readonly("n_states", &DecodabilityReport::n_states)
        .def_readonly("distinct_signatures", &DecodabilityReport::distinct_signatures)
        .def_readonly("collisions", &DecodabilityReport::collisions)
        .def("decodable", &DecodabilityReport::decodable);

    m.def("design_carrier", &design_carrier, py::arg("spec"), py::arg("seed"));
    m.def("validate_layout", &validate_layout, py::arg("layout"));
    m.def(
        "expected_fragments",
        [](const CarrierLayout& layout, const std::string& bits) {
            return expected_fragments(layout, bits).lengths;
        },
        py::arg("layout"), py::arg("bits"));
    m.def("verify_decodable", &verify_decodable, py::arg("layout"), py::arg("cap") = 20);
    m.def("palindromize", &palindromize, py::arg("layout"), py::arg("center_spacer"),
          py::arg("seed"), py::arg("max_attempts") = 10000);
}

void bind_assembly(py::module_& m) {
    py::enum_<PairState>(m, "PairState")
        .value("Unpaired", PairState::Unpaired)
        .value("Paired", PairState::Paired)
        .value("Mismatched", PairState::Mismatched);

    py::class_<AddressingOligo>(m, "AddressingOligo")
        .def_readonly("slot_index", &AddressingOligo::slot_index)
        .def_readonly("bit", &AddressingOligo::bit)
        .def_readonly("sequence", &AddressingOligo::sequence)
        .def("physical", &AddressingOligo::physical);

    py::class_<DuplexAssembly>(m, "DuplexAssembly")
        .def_readonly("layout", &DuplexAssembly::layout)
        .def_readonly("bits", &DuplexAssembly::bits)
        .def_readonly("pairing", &DuplexAssembly::pairing)
        .def_readonly("nicks", &DuplexAssembly::nicks)
        .def_readonly("sealed", &DuplexAssembly::sealed);

    py::class_<CrossHybridizationHit>(m, "CrossHybridizationHit")
        .def_readonly("slot_index", &CrossHybridizationHit::slot_index)
        .def_readonly("bit", &CrossHybridizationHit::bit)
        .def_readonly("window_start", &CrossHybridizationHit::window_start)
        .def_readonly("identity", &CrossHybridizationHit::identity);

    m.def("make_oligo", &make_oligo, py::arg("layout"), py::arg("slot_index"), py::arg("bit"));
    m.def("anneal", &anneal, py::arg("layout"), py::arg("bits"));
    m.def("ligate", &ligate, py::arg("assembly"));
    m.def("cross_hybridization_check", &cross_hybridization_check, py::arg("layout"),
          py::arg("threshold") = 0.75);
}

void bind_digest(py::module_& m) {
    py::class_<Enzyme>(m, "Enzyme")
        .def_readonly("name", &Enzyme::name)
        .def_readonly("recognition", &Enzyme::recognition)
        .def_readonly("cut_offset", &Enzyme::cut_offset)
        .def_readonly("requires_full_duplex", &Enzyme::requires_full_duplex);

    py::class_<GelBand>(m, "GelBand")
        .def(py::init<>())
        .def_readwrite("length_bp", &GelBand::length_bp)
        .def_readwrite("merged_count", &GelBand::merged_count)
        .def(py::self == py::self);

    py::class_<GelLane>(m, "GelLane")
        .def(py::init<>())
        .def_readwrite("bands", &GelLane::bands)
        .def_readwrite("resolution_bp", &GelLane::resolution_bp)
        .def_readwrite("ladder", &GelLane::ladder)
        .def(py::self == py::self);

    m.def("make_enzyme", &make_enzyme, py::arg("name"), py::arg("recognition"),
          py::arg("cut_offset"), py::arg("requires_full_duplex") = true);
    m.def("ecori", &ecori);
    m.def(
        "digest",
        [](const DuplexAssembly& assembly, const Enzyme& enzyme) {
            return digest(assembly, enzyme).lengths;
        },
        py::arg("assembly"), py::arg("enzyme"));
    m.def(
        "render_gel",
        [](std::vector<std::size_t> fragments, std::size_t resolution_bp,
           std::vector<std::size_t> ladder) {
            return render_gel(FragmentSet{std::move(fragments)}, resolution_bp,
                              std::move(ladder));
        },
        py::arg("fragments"), py::arg("resolution_bp") = 2,
        py::arg("ladder") = std::vector<std::size_t>{});
    m.def("gel_text", &gel_text, py::arg("lane"));
    m.def("decode_gel", &decode_gel, py::arg("lane"), py::arg("layout"), py::arg("enzyme"));
}

void bind_porescan(py::module_& m) {
    py::enum_<Orientation>(m, "Orientation")
        .value("Forward", Orientation::Forward)
        .value("Reverse", Orientation::Reverse);

    py::enum_<OrientationHint>(m, "OrientationHint")
        .value("Unknown", OrientationHint::Unknown)
        .value("Forward", OrientationHint::Forward)
        .value("Reverse", OrientationHint::Reverse);

    py::class_<TraceParams>(m, "TraceParams")
        .def(py::init<>())
        .def_readwrite("baseline_current", &TraceParams::baseline_current)
        .def_readwrite("dna_block_fraction", &TraceParams::dna_block_fraction)
        .def_readwrite("stud_extra_block_fraction", &TraceParams::stud_extra_block_fraction)
        .def_readwrite("velocity", &TraceParams::velocity)
        .def_readwrite("sample_rate", &TraceParams::sample_rate)
        .def_readwrite("noise_sigma", &TraceParams::noise_sigma)
        .def_readwrite("stud_footprint", &TraceParams::stud_footprint)
        .def_readwrite("lead_in_s", &TraceParams::lead_in_s)
        .def_readwrite("lead_out_s", &TraceParams::lead_out_s)
        .def("dna_level", &TraceParams::dna_level)
        .def("stud_amplitude", &TraceParams::stud_amplitude)
        .def("stud_level", &TraceParams::stud_level);

    py::class_<StuddedComplex>(m, "StuddedComplex")
        .def_readonly("layout", &StuddedComplex::layout)
        .def_readonly("bits", &StuddedComplex::bits)
        .def_readonly("stud_positions", &StuddedComplex::stud_positions);

    py::class_<BlockadeTrace>(m, "BlockadeTrace")
        .def_readonly("current", &BlockadeTrace::current)
        .def_readonly("sample_rate", &BlockadeTrace::sample_rate)
        .def("duration", &BlockadeTrace::duration);

    py::class_<BlockadeEvent>(m, "BlockadeEvent")
        .def(py::init<>())
        .def_readwrite("start_time", &BlockadeEvent::start_time)
        .def_readwrite("duration", &BlockadeEvent::duration)
        .def("center", &BlockadeEvent::center)
        .def(py::self == py::self);

    py::class_<DetectionParams>(m, "DetectionParams")
        .def(py::init<>())
        .def_readwrite("enter_threshold", &DetectionParams::enter_threshold)
        .def_readwrite("exit_threshold", &DetectionParams::exit_threshold)
        .def_readwrite("min_duration", &DetectionParams::min_duration);

    m.def("stud", &stud, py::arg("assembly"));
    m.def("translocate", &translocate, py::arg("studded"), py::arg("params"),
          py::arg("orientation"), py::arg("seed"));
    m.def("default_detection", &default_detection, py::arg("params"));
    m.def("detect_events", &detect_events, py::arg("trace"), py::arg("detection"));
    m.def("decode_trace", &decode_trace, py::arg("events"), py::arg("layout"), py::arg("params"),
          py::arg("hint") = OrientationHint::Unknown);
}

void bind_io(py::module_& m) {
    py::class_<FastaRecord>(m, "FastaRecord")
        .def(py::init([](std::string name, const Strand& seq) {
                 return FastaRecord{std::move(name), seq};
             }),
             py::arg("name"), py::arg("seq"))
        .def_readwrite("name", &FastaRecord::name)
        .def_readwrite("seq", &FastaRecord::seq);

    m.def("to_fasta", &to_fasta, py::arg("records"));
    m.def("parse_fasta", &parse_fasta, py::arg("text"));

    m.def(
        "layout_to_json",
        [](const CarrierLayout& layout) { return layout_to_json(layout).dump(2); },
        py::arg("layout"));
    m.def(
        "layout_from_json",
        [](const std::string& text) { return layout_from_json(nlohmann::json::parse(text)); },
        py::arg("text"));
    m.def(
        "assembly_to_json",
        [](const DuplexAssembly& assembly) { return assembly_to_json(assembly).dump(2); },
        py::arg("assembly"));
    m.def(
        "assembly_from_json",
        [](const std::string& text) { return assembly_from_json(nlohmann::json::parse(text)); },
        py::arg("text"));
    m.def(
        "lane_to_json", [](const GelLane& lane) { return lane_to_json(lane).dump(2); },
        py::arg("lane"));
    m.def(
        "lane_from_json",
        [](const std::string& text) { return lane_from_json(nlohmann::json::parse(text)); },
        py::arg("text"));
    m.def(
        "events_to_json",
        [](const std::vector<BlockadeEvent>& events) { return events_to_json(events).dump(2); },
        py::arg("events"));
    m.def(
        "events_from_json",
        [](const std::string& text) { return events_from_json(nlohmann::json::parse(text)); },
        py::arg("text"));
    m.def(
        "report_to_json",
        [](const DecodabilityReport& report) { return report_to_json(report).dump(2); },
        py::arg("report"));

    m.def("trace_to_text", &trace_to_text, py::arg("trace"));
    m.def("trace_from_text", &trace_from_text, py::arg("text"));
    m.def("fnv1a64_hex", [](std::string_view bytes) { return fnv1a64_hex(bytes); },
          py::arg("data"));
}

}  // namespace

PYBIND11_MODULE(_dnamem, m) {
    m.doc() = "Restriction-enzyme DNA memory: carrier design, bit writing, gel and pore readout";
    m.attr("__version__") = "0.1.0";
    m.attr("DATA_FIELD_LEN") = kDataFieldLen;
    m.attr("CUT_OFFSET") = kCutOffset;
    m.attr("MIN_ADDRESS_LEN") = kMinAddressLen;

    bind_errors(m);
    bind_seq(m);
    bind_layout(m);
    bind_assembly(m);
    bind_digest(m);
    bind_porescan(m);
    bind_io(m);
}
