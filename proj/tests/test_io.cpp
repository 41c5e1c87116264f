#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnamem/errors.hpp"
#include "dnamem/io.hpp"

using namespace dnamem;

namespace {

DesignSpec reference_spec() {
    DesignSpec spec;
    spec.n_bits = 2;
    spec.cut_positions = {18, 52};
    spec.total_length = 77;
    return spec;
}

}  // namespace

TEST_CASE("fasta wraps at sixty columns and round-trips") {
    CarrierLayout layout = design_carrier(reference_spec(), 7);
    std::vector<FastaRecord> records{{"carrier", layout.carrier},
                                     {"slot-0 oligo bit 0", make_oligo(layout, 0, 0).physical()}};
    std::string text = to_fasta(records);

    CHECK(text.substr(0, 9) == ">carrier\n");
    // 77 bases split 60 + 17
    const std::size_t first_nl = text.find('\n');
    const std::size_t second_nl = text.find('\n', first_nl + 1);
    const std::size_t third_nl = text.find('\n', second_nl + 1);
    CHECK(second_nl - first_nl - 1 == 60);
    CHECK(third_nl - second_nl - 1 == 17);

    std::vector<FastaRecord> back = parse_fasta(text);
    REQUIRE(back.size() == 2);
    CHECK(back[0].name == "carrier");
    CHECK(back[0].seq == layout.carrier);
    CHECK(back[1].name == "slot-0 oligo bit 0");
    CHECK(back[1].seq == make_oligo(layout, 0, 0).physical());
}

TEST_CASE("fasta parsing tolerates blank lines and CR endings") {
    std::string text = ">a\r\nGAAT\r\nTC\r\n\r\n>b\nACGT";
    std::vector<FastaRecord> records = parse_fasta(text);
    REQUIRE(records.size() == 2);
    CHECK(records[0].seq.str() == "GAATTC");
    CHECK(records[1].seq.str() == "ACGT");

    CHECK_THROWS_AS(parse_fasta("ACGT\n"), std::invalid_argument);   // no header
    CHECK_THROWS_AS(parse_fasta(">x\nACGU\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fasta(">x\n>y\nACGT\n"), std::invalid_argument);  // empty record
    CHECK(parse_fasta("").empty());
}

TEST_CASE("layout survives a json round trip byte for byte") {
    CarrierLayout layout = design_carrier(reference_spec(), 7);
    nlohmann::json j = layout_to_json(layout);

    CHECK(j["format"] == "dnamem-layout");
    CHECK(j["version"] == 1);
    CHECK(j["address_len"] == 14);
    CHECK(j["palindromic"] == false);
    CHECK(j["slots"].size() == 2);
    CHECK(j["slots"][0]["digit"] == 1);
    CHECK(j["slots"][0]["site_start"] == 17);
    CHECK(j["slots"][0]["left_addr"] == nlohmann::json::array({3, 14}));
    CHECK(j["slots"][0]["right_addr"] == nlohmann::json::array({23, 14}));
    CHECK(j.contains("conventions"));

    CarrierLayout back = layout_from_json(j);
    CHECK(back.carrier == layout.carrier);
    CHECK(back.slots == layout.slots);
    CHECK(back.address_len == layout.address_len);
    CHECK(back.min_address_hamming == layout.min_address_hamming);
    CHECK(back.palindromic == layout.palindromic);

    // serialization is deterministic
    CHECK(layout_to_json(back).dump() == j.dump());
}

TEST_CASE("layout loading rejects damage") {
    CarrierLayout layout = design_carrier(reference_spec(), 7);
    nlohmann::json j = layout_to_json(layout);

    nlohmann::json wrong_format = j;
    wrong_format["format"] = "something-else";
    CHECK_THROWS_AS(layout_from_json(wrong_format), std::invalid_argument);

    nlohmann::json missing = j;
    missing.erase("slots");
    CHECK_THROWS_AS(layout_from_json(missing), std::invalid_argument);

    nlohmann::json shifted = j;
    shifted["slots"][0]["site_start"] = 18;  // no longer matches the carrier
    CHECK_THROWS_AS(layout_from_json(shifted), Error);

    nlohmann::json version = j;
    version["version"] = 99;
    CHECK_THROWS_AS(layout_from_json(version), std::invalid_argument);
}

TEST_CASE("assembly json embeds the layout and run-length pairing") {
    CarrierLayout layout = design_carrier(reference_spec(), 7);
    DuplexAssembly assembly = anneal(layout, "00");
    nlohmann::json j = assembly_to_json(assembly);

    CHECK(j["format"] == "dnamem-assembly");
    CHECK(j["bits"] == "00");
    CHECK(j["sealed"] == false);
    CHECK(j["nicks"] == nlohmann::json::array({37}));
    CHECK(j["pairing"] ==
          nlohmann::json::array({{"U", 3}, {"P", 68}, {"U", 6}}));

    DuplexAssembly back = assembly_from_json(j);
    CHECK(back.bits == assembly.bits);
    CHECK(back.pairing == assembly.pairing);
    CHECK(back.nicks == assembly.nicks);
    CHECK(back.sealed == assembly.sealed);
    CHECK(back.layout.carrier == layout.carrier);

    DuplexAssembly mixed = anneal(layout, "01");
    DuplexAssembly mixed_back = assembly_from_json(assembly_to_json(mixed));
    CHECK(mixed_back.pairing == mixed.pairing);

    nlohmann::json bad = j;
    bad["pairing"] = nlohmann::json::array({{"P", 10}});  // wrong total
    CHECK_THROWS_AS(assembly_from_json(bad), std::invalid_argument);
}

TEST_CASE("gel lane json round trip") {
    FragmentSet fs;
    fs.lengths = {18, 25, 34};
    GelLane lane = render_gel(fs, 2);
    nlohmann::json j = lane_to_json(lane);

    CHECK(j["format"] == "dnamem-gel");
    CHECK(j["resolution_bp"] == 2);
    CHECK(j["bands"][0]["length_bp"] == 34);
    CHECK(j["bands"][0]["count"] == 1);

    GelLane back = lane_from_json(j);
    CHECK(back == lane);

    nlohmann::json bad = j;
    bad.erase("bands");
    CHECK_THROWS_AS(lane_from_json(bad), std::invalid_argument);
}

TEST_CASE("event list json round trip") {
    std::vector<BlockadeEvent> events{{0.12, 0.2}, {0.46, 0.2}};
    nlohmann::json j = events_to_json(events);
    REQUIRE(j.is_array());
    CHECK(j[0]["start_s"] == doctest::Approx(0.12));
    CHECK(j[0]["duration_s"] == doctest::Approx(0.2));
    std::vector<BlockadeEvent> back = events_from_json(j);
    REQUIRE(back.size() == 2);
    CHECK(back[0].start_time == doctest::Approx(events[0].start_time));
    CHECK(back[1].duration == doctest::Approx(events[1].duration));
}

TEST_CASE("report and off-target exports") {
    DesignSpec spec;
    spec.n_bits = 2;
    spec.cut_positions = {20, 80};
    spec.total_length = 100;
    CarrierLayout layout = design_carrier(spec, 3);
    nlohmann::json j = report_to_json(verify_decodable(layout));
    CHECK(j["n_states"] == 4);
    CHECK(j["distinct_signatures"] == 3);
    CHECK(j["decodable"] == false);
    CHECK(j["collisions"] == nlohmann::json::array({{"01", "10"}}));

    std::vector<CrossHybridizationHit> hits{{0, 1, 70, 26.0 / 30.0}};
    nlohmann::json h = hits_to_json(hits);
    CHECK(h[0]["slot"] == 0);
    CHECK(h[0]["bit"] == 1);
    CHECK(h[0]["window_start"] == 70);
    CHECK(h[0]["identity"] == doctest::Approx(26.0 / 30.0));
}

TEST_CASE("trace text round trip keeps rate and currents") {
    CarrierLayout layout = design_carrier(reference_spec(), 7);
    TraceParams params;
    params.noise_sigma = 0.02;
    BlockadeTrace trace =
        translocate(stud(anneal(layout, "01")), params, Orientation::Forward, 8);

    std::string text = trace_to_text(trace);
    CHECK(text.front() == '#');  // leading description
    BlockadeTrace back = trace_from_text(text);
    CHECK(back.sample_rate == doctest::Approx(10000.0));
    REQUIRE(back.current.size() == trace.current.size());
    for (std::size_t k = 0; k < back.current.size(); k += 997)
        CHECK(back.current[k] == doctest::Approx(trace.current[k]).epsilon(1e-5));

    CHECK_THROWS_AS(trace_from_text("0.0 1.0\n"), std::invalid_argument);  // one sample
    CHECK_THROWS_AS(trace_from_text("a b\nc d\n"), std::invalid_argument);
    CHECK_THROWS_AS(trace_from_text("# only comments\n"), std::invalid_argument);
}

TEST_CASE("file io round trip and failure") {
    const std::string path = "/tmp/dnamem_io_test.txt";
    write_file(path, "some bytes\n");
    CHECK(read_file(path) == "some bytes\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_file("/tmp/dnamem_does_not_exist_404"), Error);
    CHECK_THROWS_AS(write_file("/tmp/no_such_dir_404/x", "y"), Error);
}

TEST_CASE("checksums match the reference implementation") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a64_hex("hello") == "a430d84680aabd0b");
    CHECK(fnv1a64_hex("GAATTC") == "3d839ff2e6705835");
}
