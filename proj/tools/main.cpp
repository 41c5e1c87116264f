#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dnamem/assembly.hpp"
#include "dnamem/digest.hpp"
#include "dnamem/errors.hpp"
#include "dnamem/io.hpp"
#include "dnamem/layout.hpp"
#include "dnamem/porescan.hpp"
#include "dnamem/rng.hpp"

namespace {

using dnamem::Error;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;   // bad input or an unreadable decode
constexpr int kExitAmbiguous = 2;
constexpr int kExitDesign = 3;

// Collects every artifact written during one invocation so a manifest can
// name them all with checksums.
struct Session {
    std::string subcommand;
    std::uint64_t seed = 0;
    nlohmann::json params = nlohmann::json::object();
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> outputs;
    std::string manifest_path;

    std::string read(const std::string& path) {
        std::string content = dnamem::read_file(path);
        inputs.emplace_back(path, dnamem::fnv1a64_hex(content));
        return content;
    }
    void write(const std::string& path, std::string_view content) {
        dnamem::write_file(path, content);
        outputs.emplace_back(path, dnamem::fnv1a64_hex(content));
    }
    void finish() {
        if (manifest_path.empty()) return;
        auto listing = [](const std::vector<std::pair<std::string, std::string>>& files) {
            nlohmann::json out = nlohmann::json::array();
            for (const auto& [path, sum] : files)
                out.push_back({{"path", path}, {"fnv1a64", sum}});
            return out;
        };
        nlohmann::json m{{"format", "dnamem-manifest"}, {"version", 1},
                         {"subcommand", subcommand},    {"seed", seed},
                         {"params", params},            {"inputs", listing(inputs)},
                         {"outputs", listing(outputs)}};
        dnamem::write_file(manifest_path, m.dump(2) + "\n");
    }
};

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

dnamem::CarrierLayout load_layout(Session& session, const std::string& path) {
    return dnamem::layout_from_json(nlohmann::json::parse(session.read(path)));
}

void add_manifest_flag(CLI::App* cmd, Session& session) {
    cmd->add_option("--manifest", session.manifest_path,
                    "Write a reproducibility manifest (inputs, outputs, checksums)");
}

std::string oligo_fasta(const dnamem::CarrierLayout& layout, const std::string& bits) {
    std::vector<dnamem::FastaRecord> records;
    for (std::size_t s = 0; s < layout.slots.size(); ++s) {
        const int bit = bits[layout.slots[s].digit] - '0';
        records.push_back({"oligo slot=" + std::to_string(s) + " bit=" + std::to_string(bit),
                           make_oligo(layout, s, bit).physical()});
    }
    return to_fasta(records);
}

int cmd_design(Session& session, const dnamem::DesignSpec& spec, const std::string& out,
               const std::string& format, const std::string& fasta_out) {
    dnamem::CarrierLayout layout = dnamem::design_carrier(spec, session.seed);
    if (!out.empty()) {
        if (format == "fasta")
            session.write(out, dnamem::to_fasta({{"carrier", layout.carrier}}));
        else
            session.write(out, dump(dnamem::layout_to_json(layout)));
    }
    if (!fasta_out.empty())
        session.write(fasta_out, dnamem::to_fasta({{"carrier", layout.carrier}}));
    std::cout << "designed " << layout.carrier.size() << "-base carrier, " << layout.n_bits()
              << " bit(s), " << layout.slots.size() << " slot(s), address length "
              << layout.address_len << "\n";
    session.finish();
    return kExitOk;
}

int cmd_write(Session& session, const std::string& layout_path, const std::string& bits,
              bool ligate_flag, const std::string& out, const std::string& format,
              const std::string& fasta_out) {
    dnamem::CarrierLayout layout = load_layout(session, layout_path);
    dnamem::DuplexAssembly assembly = dnamem::anneal(layout, bits);
    if (ligate_flag) assembly = dnamem::ligate(assembly);
    if (!out.empty()) {
        if (format == "fasta")
            session.write(out, oligo_fasta(layout, bits));
        else
            session.write(out, dump(dnamem::assembly_to_json(assembly)));
    }
    if (!fasta_out.empty()) session.write(fasta_out, oligo_fasta(layout, bits));
    std::cout << "wrote " << bits << " into " << layout.slots.size() << " slot(s), "
              << assembly.nicks.size() << " nick(s)" << (assembly.sealed ? ", sealed" : "")
              << "\n";
    session.finish();
    return kExitOk;
}

struct ReadOptions {
    std::string assembly_path;
    std::string layout_path;
    std::string gel_path;    // decode an existing lane
    std::string trace_path;  // decode an existing trace
    std::string mode = "gel";
    std::size_t resolution = 2;
    std::vector<std::size_t> ladder;
    std::string orientation = "random";
    bool blind = false;
    double noise = 0.0;
    bool show = false;
    std::string out;
    std::string format = "json";
};

int cmd_read(Session& session, const ReadOptions& opt) {
    std::optional<dnamem::CarrierLayout> layout;
    std::optional<dnamem::DuplexAssembly> assembly;
    if (!opt.assembly_path.empty()) {
        assembly = dnamem::assembly_from_json(nlohmann::json::parse(session.read(opt.assembly_path)));
        layout = assembly->layout;
    } else if (!opt.layout_path.empty()) {
        layout = load_layout(session, opt.layout_path);
    }
    if (!layout)
        throw Error("read needs --assembly, or --layout next to --gel/--trace");

    std::string bits;
    if (opt.mode == "gel") {
        dnamem::GelLane lane;
        if (!opt.gel_path.empty()) {
            lane = dnamem::lane_from_json(nlohmann::json::parse(session.read(opt.gel_path)));
        } else if (assembly) {
            lane = dnamem::render_gel(dnamem::digest(*assembly, dnamem::ecori()), opt.resolution,
                                      opt.ladder);
        } else {
            throw Error("gel mode needs --assembly or --gel");
        }
        if (opt.show) std::cout << gel_text(lane);
        if (!opt.out.empty())
            session.write(opt.out, opt.format == "text" ? dnamem::gel_text(lane)
                                                        : dump(dnamem::lane_to_json(lane)));
        bits = dnamem::decode_gel(lane, *layout, dnamem::ecori());
    } else if (opt.mode == "pore") {
        dnamem::TraceParams params;
        params.noise_sigma = opt.noise;
        dnamem::DetectionParams det = dnamem::default_detection(params);
        std::vector<dnamem::BlockadeEvent> events;
        dnamem::OrientationHint hint = dnamem::OrientationHint::Unknown;
        if (!opt.trace_path.empty()) {
            dnamem::BlockadeTrace trace = dnamem::trace_from_text(session.read(opt.trace_path));
            events = dnamem::detect_events(trace, det);
            if (opt.orientation == "forward") hint = dnamem::OrientationHint::Forward;
            else if (opt.orientation == "reverse") hint = dnamem::OrientationHint::Reverse;
            if (!opt.out.empty()) session.write(opt.out, dump(dnamem::events_to_json(events)));
        } else if (assembly) {
            dnamem::Orientation o = dnamem::Orientation::Forward;
            if (opt.orientation == "reverse") o = dnamem::Orientation::Reverse;
            else if (opt.orientation == "random")
                o = dnamem::Rng(session.seed).below(2) == 0 ? dnamem::Orientation::Forward
                                                            : dnamem::Orientation::Reverse;
            dnamem::BlockadeTrace trace =
                dnamem::translocate(dnamem::stud(*assembly), params, o, session.seed);
            events = dnamem::detect_events(trace, det);
            // the simulation knows which way the molecule went in; keep that
            // knowledge unless the caller asks for a blind read
            if (!opt.blind)
                hint = o == dnamem::Orientation::Forward ? dnamem::OrientationHint::Forward
                                                         : dnamem::OrientationHint::Reverse;
            if (!opt.out.empty())
                session.write(opt.out, opt.format == "text"
                                           ? dnamem::trace_to_text(trace)
                                           : dump(dnamem::events_to_json(events)));
        } else {
            throw Error("pore mode needs --assembly or --trace");
        }
        bits = dnamem::decode_trace(events, *layout, params, hint);
    } else {
        throw Error("unknown read mode: " + opt.mode);
    }

    std::cout << bits << "\n";
    session.finish();
    return kExitOk;
}

int cmd_verify(Session& session, const std::string& layout_path, std::size_t cap,
               std::optional<double> cross_talk, const std::string& out,
               const std::string& format) {
    dnamem::CarrierLayout layout = load_layout(session, layout_path);
    dnamem::DecodabilityReport report = dnamem::verify_decodable(layout, cap);

    std::vector<dnamem::CrossHybridizationHit> hits;
    if (cross_talk) hits = dnamem::cross_hybridization_check(layout, *cross_talk);

    nlohmann::json j = dnamem::report_to_json(report);
    if (cross_talk) j["off_target_windows"] = dnamem::hits_to_json(hits);

    std::ostringstream text;
    text << report.n_states << " states, " << report.distinct_signatures
         << " distinct signatures; "
         << (report.decodable() ? "every state is identifiable" : "collisions found") << "\n";
    for (const auto& [a, b] : report.collisions) text << "  collision: " << a << " vs " << b << "\n";
    if (cross_talk)
        text << hits.size() << " off-target window(s) at identity >= " << *cross_talk << "\n";

    std::cout << text.str();
    if (!out.empty()) session.write(out, format == "text" ? text.str() : dump(j));
    session.finish();
    return report.decodable() ? kExitOk : kExitAmbiguous;
}

int cmd_palindromize(Session& session, const std::string& layout_path,
                     std::optional<std::size_t> spacer, std::size_t max_attempts,
                     const std::string& out) {
    dnamem::CarrierLayout layout = load_layout(session, layout_path);
    const std::size_t gap = spacer ? *spacer : 2 * layout.address_len + dnamem::kDataFieldLen;
    dnamem::CarrierLayout pal = dnamem::palindromize(layout, gap, session.seed, max_attempts);
    if (!out.empty()) session.write(out, dump(dnamem::layout_to_json(pal)));
    std::cout << "palindromized to " << pal.carrier.size() << " bases, " << pal.slots.size()
              << " slots, spacer " << gap << "\n";
    session.finish();
    return kExitOk;
}

int cmd_pore_sim(Session& session, const std::string& layout_path, const std::string& bits,
                 const std::string& orientation, double noise, const std::string& out,
                 const std::string& format, const std::string& events_out) {
    dnamem::CarrierLayout layout = load_layout(session, layout_path);
    dnamem::TraceParams params;
    params.noise_sigma = noise;
    dnamem::Orientation o = dnamem::Orientation::Forward;
    if (orientation == "reverse") o = dnamem::Orientation::Reverse;
    else if (orientation == "random")
        o = dnamem::Rng(session.seed).below(2) == 0 ? dnamem::Orientation::Forward
                                                    : dnamem::Orientation::Reverse;

    dnamem::BlockadeTrace trace =
        dnamem::translocate(dnamem::stud(dnamem::anneal(layout, bits)), params, o, session.seed);
    std::vector<dnamem::BlockadeEvent> events =
        dnamem::detect_events(trace, dnamem::default_detection(params));

    if (!out.empty())
        session.write(out, format == "json" ? dump(dnamem::events_to_json(events))
                                            : dnamem::trace_to_text(trace));
    if (!events_out.empty()) session.write(events_out, dump(dnamem::events_to_json(events)));
    std::cout << "simulated " << trace.current.size() << " samples, " << events.size()
              << " blockade event(s), "
              << (o == dnamem::Orientation::Forward ? "forward" : "reverse") << " entry\n";
    session.finish();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dnamem: design, write, and read a restriction-enzyme DNA memory"};
    app.require_subcommand(1);

    Session session;
    std::function<int()> run;

    // design
    auto* design = app.add_subcommand("design", "Generate a carrier layout");
    auto spec = std::make_shared<dnamem::DesignSpec>();
    auto design_out = std::make_shared<std::string>();
    auto design_fmt = std::make_shared<std::string>("json");
    auto design_fasta = std::make_shared<std::string>();
    design->add_option("--bits", spec->n_bits, "Number of message bits")->required();
    design->add_option("--cuts", spec->cut_positions, "Cut coordinates, comma separated")
        ->delimiter(',');
    design->add_option("--length", spec->total_length, "Carrier length (with --cuts)");
    design->add_option("--lead", spec->lead, "Bases before the first slot");
    design->add_option("--gap", spec->gap, "Bases between slots");
    design->add_option("--tail", spec->tail, "Bases after the last slot");
    design->add_option("--address-len", spec->address_len, "Address length, 0 = auto");
    design->add_option("--min-hamming", spec->min_address_hamming,
                       "Minimum pairwise address distance");
    design->add_option("--max-attempts", spec->max_attempts, "Sampling budget");
    design->add_option("--seed", session.seed, "Random seed");
    design->add_option("--out", *design_out, "Layout file to write");
    design->add_option("--format", *design_fmt, "Output format: json or fasta")
        ->check(CLI::IsMember({"json", "fasta"}));
    design->add_option("--fasta", *design_fasta, "Also write the carrier as FASTA");
    add_manifest_flag(design, session);
    design->callback([&, spec, design_out, design_fmt, design_fasta] {
        session.subcommand = "design";
        run = [&, spec, design_out, design_fmt, design_fasta] {
            return cmd_design(session, *spec, *design_out, *design_fmt, *design_fasta);
        };
    });

    // write
    auto* write = app.add_subcommand("write", "Anneal addressing oligos onto a carrier");
    auto w_layout = std::make_shared<std::string>();
    auto w_bits = std::make_shared<std::string>();
    auto w_ligate = std::make_shared<bool>(false);
    auto w_out = std::make_shared<std::string>();
    auto w_fmt = std::make_shared<std::string>("json");
    auto w_fasta = std::make_shared<std::string>();
    write->add_option("--layout", *w_layout, "Layout file")->required();
    write->add_option("--bits", *w_bits, "Bit string to store")->required();
    write->add_flag("--ligate", *w_ligate, "Seal the nicks after annealing");
    write->add_option("--out", *w_out, "Assembly file to write");
    write->add_option("--format", *w_fmt, "Output format: json or fasta")
        ->check(CLI::IsMember({"json", "fasta"}));
    write->add_option("--fasta", *w_fasta, "Also write the oligos as FASTA");
    add_manifest_flag(write, session);
    write->callback([&, w_layout, w_bits, w_ligate, w_out, w_fmt, w_fasta] {
        session.subcommand = "write";
        run = [&, w_layout, w_bits, w_ligate, w_out, w_fmt, w_fasta] {
            return cmd_write(session, *w_layout, *w_bits, *w_ligate, *w_out, *w_fmt, *w_fasta);
        };
    });

    // read
    auto* read = app.add_subcommand("read", "Decode a written assembly");
    auto opt = std::make_shared<ReadOptions>();
    read->add_option("--assembly", opt->assembly_path, "Assembly file");
    read->add_option("--layout", opt->layout_path, "Layout file (with --gel or --trace)");
    read->add_option("--gel", opt->gel_path, "Decode an existing gel lane file");
    read->add_option("--trace", opt->trace_path, "Decode an existing trace file");
    read->add_option("--mode", opt->mode, "gel or pore")
        ->check(CLI::IsMember({"gel", "pore"}));
    read->add_option("--resolution", opt->resolution, "Gel resolution in bp");
    read->add_option("--ladder", opt->ladder, "Gel ladder rungs, comma separated")
        ->delimiter(',');
    read->add_option("--orientation", opt->orientation, "Pore entry: forward, reverse, random")
        ->check(CLI::IsMember({"forward", "reverse", "random"}));
    read->add_flag("--blind-orientation", opt->blind,
                   "Decode without knowing the simulated direction");
    read->add_option("--noise", opt->noise, "Trace noise sigma, current units");
    read->add_flag("--show", opt->show, "Print the gel to standard output");
    read->add_option("--seed", session.seed, "Random seed");
    read->add_option("--out", opt->out, "Evidence file to write (lane, trace, or events)");
    read->add_option("--format", opt->format, "Evidence format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    add_manifest_flag(read, session);
    read->callback([&, opt] {
        session.subcommand = "read";
        run = [&, opt] { return cmd_read(session, *opt); };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Check that every state is distinguishable");
    auto v_layout = std::make_shared<std::string>();
    auto v_cap = std::make_shared<std::size_t>(20);
    auto v_cross = std::make_shared<double>(-1.0);
    auto v_out = std::make_shared<std::string>();
    auto v_fmt = std::make_shared<std::string>("json");
    verify->add_option("--layout", *v_layout, "Layout file")->required();
    verify->add_option("--cap", *v_cap, "Refuse enumeration beyond this many bits");
    verify->add_option("--cross-talk", *v_cross,
                       "Also scan oligo off-target windows at this identity threshold");
    verify->add_option("--out", *v_out, "Report file to write");
    verify->add_option("--format", *v_fmt, "Report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    add_manifest_flag(verify, session);
    verify->callback([&, v_layout, v_cap, v_cross, v_out, v_fmt] {
        session.subcommand = "verify";
        run = [&, v_layout, v_cap, v_cross, v_out, v_fmt] {
            std::optional<double> cross;
            if (*v_cross >= 0.0) cross = *v_cross;
            return cmd_verify(session, *v_layout, *v_cap, cross, *v_out, *v_fmt);
        };
    });

    // palindromize
    auto* pal = app.add_subcommand("palindromize",
                                   "Mirror the layout so both orientations read alike");
    auto p_layout = std::make_shared<std::string>();
    auto p_spacer = std::make_shared<std::int64_t>(-1);
    auto p_attempts = std::make_shared<std::size_t>(10000);
    auto p_out = std::make_shared<std::string>();
    pal->add_option("--layout", *p_layout, "Layout file")->required();
    pal->add_option("--spacer", *p_spacer, "Bases between the halves (default 2*address+6)");
    pal->add_option("--max-attempts", *p_attempts, "Sampling budget");
    pal->add_option("--seed", session.seed, "Random seed");
    pal->add_option("--out", *p_out, "Layout file to write");
    add_manifest_flag(pal, session);
    pal->callback([&, p_layout, p_spacer, p_attempts, p_out] {
        session.subcommand = "palindromize";
        run = [&, p_layout, p_spacer, p_attempts, p_out] {
            std::optional<std::size_t> spacer;
            if (*p_spacer >= 0) spacer = static_cast<std::size_t>(*p_spacer);
            return cmd_palindromize(session, *p_layout, spacer, *p_attempts, *p_out);
        };
    });

    // pore-sim
    auto* sim = app.add_subcommand("pore-sim", "Simulate a blockade trace for a written state");
    auto s_layout = std::make_shared<std::string>();
    auto s_bits = std::make_shared<std::string>();
    auto s_orient = std::make_shared<std::string>("forward");
    auto s_noise = std::make_shared<double>(0.0);
    auto s_out = std::make_shared<std::string>();
    auto s_fmt = std::make_shared<std::string>("text");
    auto s_events = std::make_shared<std::string>();
    sim->add_option("--layout", *s_layout, "Layout file")->required();
    sim->add_option("--bits", *s_bits, "Bit string to store")->required();
    sim->add_option("--orientation", *s_orient, "forward, reverse, or random")
        ->check(CLI::IsMember({"forward", "reverse", "random"}));
    sim->add_option("--noise", *s_noise, "Noise sigma, current units");
    sim->add_option("--seed", session.seed, "Random seed");
    sim->add_option("--out", *s_out, "Trace (text) or events (json) file");
    sim->add_option("--format", *s_fmt, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sim->add_option("--events", *s_events, "Also write detected events as json");
    add_manifest_flag(sim, session);
    sim->callback([&, s_layout, s_bits, s_orient, s_noise, s_out, s_fmt, s_events] {
        session.subcommand = "pore-sim";
        run = [&, s_layout, s_bits, s_orient, s_noise, s_out, s_fmt, s_events] {
            return cmd_pore_sim(session, *s_layout, *s_bits, *s_orient, *s_noise, *s_out, *s_fmt,
                                *s_events);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        session.params["argv"] = std::vector<std::string>(argv + 1, argv + argc);
        return run();
    } catch (const dnamem::DesignError& e) {
        std::cerr << "design failed: " << e.what() << "\n";
        return kExitDesign;
    } catch (const dnamem::DecodeError& e) {
        std::cerr << "decode failed: " << e.what() << "\n";
        for (const auto& c : e.candidates) std::cerr << "  candidate: " << c << "\n";
        return e.kind == dnamem::DecodeError::Kind::Ambiguous ? kExitAmbiguous : kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
