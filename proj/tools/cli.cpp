#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sofic/k_invariants.hpp"
#include "sofic/labeled_graph.hpp"
#include "sofic/presentations.hpp"

namespace sofic::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error("cannot read file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

labeled_graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }
int_matrix load_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

bool has_flag(const command& cmd, const std::string& name) {
    return cmd.flags.count(name) != 0;
}

std::string flag_or(const command& cmd, const std::string& name, const std::string& fallback) {
    auto it = cmd.flags.find(name);
    return it == cmd.flags.end() ? fallback : it->second;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, ',')) parts.push_back(part);
    return parts;
}

int cmd_check(const command& cmd, std::ostream& out) {
    auto g = load_graph(cmd.inputs[0]);
    bool irreducible = is_irreducible(g);
    bool mixing = is_mixing(g);
    bool rres = is_right_resolving(g);
    bool lres = is_left_resolving(g);
    bool rclo = is_right_closing(g);
    bool lclo = is_left_closing(g);
    std::optional<bool> aft;
    if (irreducible) aft = is_almost_finite_type(g);

    if (has_flag(cmd, "json")) {
        nlohmann::json j;
        j["irreducible"] = irreducible;
        j["mixing"] = mixing;
        j["right_resolving"] = rres;
        j["left_resolving"] = lres;
        j["right_closing"] = rclo;
        j["left_closing"] = lclo;
        if (aft)
            j["aft"] = *aft;
        else
            j["aft"] = nullptr;
        out << j.dump(2) << '\n';
        return 0;
    }
    out << "irreducible: " << bool_str(irreducible) << '\n';
    out << "mixing: " << bool_str(mixing) << '\n';
    out << "right-resolving: " << bool_str(rres) << '\n';
    out << "left-resolving: " << bool_str(lres) << '\n';
    out << "right-closing: " << bool_str(rclo) << '\n';
    out << "left-closing: " << bool_str(lclo) << '\n';
    out << "AFT: " << (aft ? bool_str(*aft) : "n/a") << '\n';
    return 0;
}

int cmd_cover(const command& cmd, std::ostream& out) {
    auto g = load_graph(cmd.inputs[0]);
    std::string side_name = flag_or(cmd, "side", "right");
    labeled_graph cover =
        side_name == "right" ? right_fischer_cover(g) : left_fischer_cover(g);
    if (has_flag(cmd, "output")) {
        std::ofstream file(cmd.flags.at("output"), std::ios::binary);
        if (!file)
            throw parse_error("cannot write file \"" + cmd.flags.at("output") + "\"");
        file << serialize_graph(cover);
        return 0;
    }
    if (has_flag(cmd, "json")) {
        nlohmann::json j;
        j["vertices"] = cover.vertices();
        auto edges = nlohmann::json::array();
        auto sorted = cover.edges();
        std::sort(sorted.begin(), sorted.end());
        for (const auto& e : sorted)
            edges.push_back({{"src", e.src}, {"dst", e.dst}, {"label", e.label}});
        j["edges"] = std::move(edges);
        out << j.dump(2) << '\n';
        return 0;
    }
    out << serialize_graph(cover);
    return 0;
}

int cmd_matrix(const command& cmd, std::ostream& out) {
    auto g = load_graph(cmd.inputs[0]);
    int_matrix m = has_flag(cmd, "order")
                       ? adjacency_matrix(g, split_commas(cmd.flags.at("order")))
                       : adjacency_matrix(g);
    if (has_flag(cmd, "json"))
        out << matrix_to_json(m) << '\n';
    else
        out << serialize_matrix(m);
    return 0;
}

int cmd_snf(const command& cmd, std::ostream& out) {
    auto m = load_matrix(cmd.inputs[0]);
    auto snf = smith_normal_form(m);
    bool certify = has_flag(cmd, "certify");
    if (has_flag(cmd, "json")) {
        nlohmann::json j;
        auto factors = nlohmann::json::array();
        for (const auto& f : snf.invariant_factors) factors.push_back(f.convert_to<long long>());
        j["invariant_factors"] = std::move(factors);
        if (certify) {
            j["U"] = nlohmann::json::parse(matrix_to_json(snf.u));
            j["D"] = nlohmann::json::parse(matrix_to_json(snf.d));
            j["V"] = nlohmann::json::parse(matrix_to_json(snf.v));
        }
        out << j.dump(2) << '\n';
        return 0;
    }
    for (std::size_t i = 0; i < snf.invariant_factors.size(); ++i) {
        if (i > 0) out << ' ';
        out << snf.invariant_factors[i];
    }
    out << '\n';
    if (certify) {
        out << "U:\n" << serialize_matrix(snf.u);
        out << "D:\n" << serialize_matrix(snf.d);
        out << "V:\n" << serialize_matrix(snf.v);
    }
    return 0;
}

int cmd_ktheory(const command& cmd, std::ostream& out) {
    ktheory_pair pair;
    if (has_flag(cmd, "side")) {
        auto g = load_graph(cmd.inputs[0]);
        pair = cmd.flags.at("side") == "stable" ? stable_ktheory(g) : unstable_ktheory(g);
    } else {
        pair = ruelle_ktheory(load_matrix(cmd.inputs[0]));
    }
    if (has_flag(cmd, "json")) {
        nlohmann::json j;
        j["k0"] = nlohmann::json::parse(group_to_json(pair.k0));
        j["k1"] = nlohmann::json::parse(group_to_json(pair.k1));
        out << j.dump(2) << '\n';
        return 0;
    }
    out << "K0: " << pair.k0.to_string() << '\n';
    out << "K1: " << pair.k1.to_string() << '\n';
    return 0;
}

int cmd_duality(const command& cmd, std::ostream& out) {
    const std::string& path = cmd.inputs[0];
    auto g = load_graph(path);
    auto convention = parse_convention(flag_or(cmd, "convention", "shifted"));
    if (!convention)
        throw parse_error("unknown convention \"" + cmd.flags.at("convention") + "\"");

    // The comparison matrix: an explicit flag, else a sibling B.mat.
    std::optional<int_matrix> compare;
    std::string compare_path;
    if (has_flag(cmd, "compare-unstable")) {
        compare_path = cmd.flags.at("compare-unstable");
        compare = load_matrix(compare_path);
    } else if (!has_flag(cmd, "no-compare")) {
        auto sibling = std::filesystem::path(path).parent_path() / "B.mat";
        std::error_code ec;
        if (std::filesystem::exists(sibling, ec)) {
            compare_path = sibling.string();
            compare = load_matrix(compare_path);
        }
    }

    auto report = make_duality_report(g, *convention, compare);
    if (has_flag(cmd, "json")) {
        out << report_to_json(report, path);
        return 0;
    }
    out << "shift: " << path << '\n';
    if (compare) out << "comparison matrix: " << compare_path << '\n';
    out << report_to_text(report);
    return 0;
}

int cmd_sync_word(const command& cmd, std::ostream& out) {
    auto g = load_graph(cmd.inputs[0]);
    auto w = find_synchronizing_word(g);
    if (has_flag(cmd, "json")) {
        nlohmann::json j;
        if (w)
            j["word"] = *w;
        else
            j["word"] = nullptr;
        out << j.dump(2) << '\n';
        return 0;
    }
    if (!w) {
        out << "none\n";
        return 0;
    }
    for (std::size_t i = 0; i < w->size(); ++i) {
        if (i > 0) out << ' ';
        out << (*w)[i];
    }
    out << '\n';
    return 0;
}

int cmd_periodic(const command& cmd, std::ostream& out) {
    auto g = load_graph(cmd.inputs[0]);
    unsigned n = 0;
    try {
        n = static_cast<unsigned>(std::stoul(cmd.flags.at("n")));
    } catch (const std::exception&) {
        throw parse_error("--n expects a positive integer");
    }
    if (n == 0) throw parse_error("--n expects a positive integer");
    std::vector<std::size_t> counts;
    counts.reserve(n);
    for (unsigned k = 1; k <= n; ++k) counts.push_back(count_periodic_points(g, k));
    if (has_flag(cmd, "json")) {
        nlohmann::json j;
        auto per = nlohmann::json::array();
        for (unsigned k = 1; k <= n; ++k)
            per.push_back({{"n", k}, {"count", counts[k - 1]}});
        j["per"] = std::move(per);
        out << j.dump(2) << '\n';
        return 0;
    }
    for (unsigned k = 1; k <= n; ++k)
        out << "Per_" << k << " = " << counts[k - 1] << '\n';
    return 0;
}

int cmd_shift_eq(const command& cmd, std::ostream& out) {
    auto g1 = load_graph(cmd.inputs[0]);
    auto g2 = load_graph(cmd.inputs[1]);
    bool equal = same_shift(g1, g2);
    if (has_flag(cmd, "json")) {
        nlohmann::json j;
        j["equal"] = equal;
        out << j.dump(2) << '\n';
        return 0;
    }
    out << bool_str(equal) << '\n';
    return 0;
}

} // namespace

int dispatch(const command& cmd, std::ostream& out, std::ostream& err) {
    try {
        if (cmd.name == "check") return cmd_check(cmd, out);
        if (cmd.name == "cover") return cmd_cover(cmd, out);
        if (cmd.name == "matrix") return cmd_matrix(cmd, out);
        if (cmd.name == "snf") return cmd_snf(cmd, out);
        if (cmd.name == "ktheory") return cmd_ktheory(cmd, out);
        if (cmd.name == "duality") return cmd_duality(cmd, out);
        if (cmd.name == "sync-word") return cmd_sync_word(cmd, out);
        if (cmd.name == "periodic") return cmd_periodic(cmd, out);
        if (cmd.name == "shift-eq") return cmd_shift_eq(cmd, out);
        err << "error: unknown command \"" << cmd.name << "\"\n";
        return 2;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact invariants of sofic shifts: Fischer covers, Smith normal "
                 "forms, and Ruelle-algebra K-theory"};
    app.require_subcommand(1);

    command cmd;
    std::string side, order, convention, output, compare, n_value;
    bool json = false, certify = false, no_compare = false;

    auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", json, "JSON output"); };
    auto finish = [&](CLI::App* sub, std::vector<std::string> input_names) {
        sub->parse_complete_callback([&, sub, input_names]() {
            cmd.name = sub->get_name();
            cmd.inputs.clear();
            cmd.flags.clear();
            for (const auto& name : input_names)
                cmd.inputs.push_back(sub->get_option(name)->as<std::string>());
            if (json) cmd.flags["json"] = "1";
            if (certify) cmd.flags["certify"] = "1";
            if (no_compare) cmd.flags["no-compare"] = "1";
            if (!side.empty()) cmd.flags["side"] = side;
            if (!order.empty()) cmd.flags["order"] = order;
            if (!convention.empty()) cmd.flags["convention"] = convention;
            if (!output.empty()) cmd.flags["output"] = output;
            if (!compare.empty()) cmd.flags["compare-unstable"] = compare;
            if (!n_value.empty()) cmd.flags["n"] = n_value;
        });
    };

    auto* check = app.add_subcommand("check", "print presentation flags");
    check->add_option("GRAPH", "graph file")->required();
    add_json(check);
    finish(check, {"GRAPH"});

    auto* cover = app.add_subcommand("cover", "write a Fischer cover in graph format");
    cover->add_option("GRAPH", "graph file")->required();
    cover->add_option("--side", side, "right|left")
        ->check(CLI::IsMember({"right", "left"}))
        ->required();
    cover->add_option("-o,--output", output, "output file (default stdout)");
    add_json(cover);
    finish(cover, {"GRAPH"});

    auto* matrix = app.add_subcommand("matrix", "print the adjacency matrix");
    matrix->add_option("GRAPH", "graph file")->required();
    matrix->add_option("--order", order, "comma-separated vertex order");
    add_json(matrix);
    finish(matrix, {"GRAPH"});

    auto* snf = app.add_subcommand("snf", "print Smith invariant factors");
    snf->add_option("MATRIX", "matrix file")->required();
    snf->add_flag("--certify", certify, "also print U, D, V");
    add_json(snf);
    finish(snf, {"MATRIX"});

    auto* ktheory = app.add_subcommand(
        "ktheory", "K-theory of a Ruelle algebra from a graph (--side) or matrix");
    ktheory->add_option("INPUT", "graph file (with --side) or matrix file")->required();
    ktheory->add_option("--side", side, "stable|unstable (input is then a graph)")
        ->check(CLI::IsMember({"stable", "unstable"}));
    add_json(ktheory);
    finish(ktheory, {"INPUT"});

    auto* duality = app.add_subcommand("duality", "full duality-obstruction report");
    duality->add_option("GRAPH", "graph file")->required();
    duality->add_option("--convention", convention, "shifted|preserving")
        ->check(CLI::IsMember({"shifted", "preserving"}));
    duality->add_option("--compare-unstable", compare,
                        "matrix file checked against the computed right cover");
    duality->add_flag("--no-compare", no_compare, "skip the sibling B.mat comparison");
    add_json(duality);
    finish(duality, {"GRAPH"});

    auto* sync = app.add_subcommand("sync-word", "shortest synchronizing word");
    sync->add_option("GRAPH", "graph file")->required();
    add_json(sync);
    finish(sync, {"GRAPH"});

    auto* periodic = app.add_subcommand("periodic", "periodic-point counts |Per_1..N|");
    periodic->add_option("GRAPH", "graph file")->required();
    periodic->add_option("--n", n_value, "maximum period")->required();
    add_json(periodic);
    finish(periodic, {"GRAPH"});

    auto* shift_eq = app.add_subcommand("shift-eq", "do two presentations give the same shift?");
    shift_eq->add_option("GRAPH1", "first graph file")->required();
    shift_eq->add_option("GRAPH2", "second graph file")->required();
    add_json(shift_eq);
    finish(shift_eq, {"GRAPH1", "GRAPH2"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return dispatch(cmd, out, err);
}

} // namespace sofic::cli
