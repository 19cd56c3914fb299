#include "mfl/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mfl/acceptance.hpp"
#include "mfl/algebra.hpp"
#include "mfl/corpus.hpp"
#include "mfl/paige.hpp"
#include "mfl/zorn.hpp"

namespace mfl::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return "fnv1a64:" + os.str();
}

struct TableInput {
    FiniteLoop loop;
    std::string path;
    std::string digest;
};

TableInput load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::bad_input, "cannot open table file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    std::istringstream is(bytes);
    TableInput t;
    t.loop = read_table(is);
    t.path = path;
    t.digest = fnv1a_digest(bytes);
    return t;
}

json make_report(const std::string& command) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    return j;
}

void add_result(json& report, const std::string& name, bool pass, const json& value = nullptr) {
    if (!report.contains("results")) report["results"] = json::array();
    json r;
    r["name"] = name;
    r["pass"] = pass;
    if (!value.is_null()) r["value"] = value;
    report["results"].push_back(r);
}

bool all_passed(const json& report) {
    for (const auto& r : report["results"])
        if (!r["pass"].get<bool>()) return false;
    return true;
}

void emit(const json& report, bool as_json, const std::string& out_path, std::ostream& out) {
    std::string text;
    if (as_json) {
        text = report.dump(2) + "\n";
    } else {
        std::ostringstream os;
        for (const auto& r : report["results"]) {
            os << (r["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << r["name"].get<std::string>();
            if (r.contains("value")) os << " = " << r["value"].dump();
            os << "\n";
        }
        text = os.str();
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw Error(Errc::bad_input, "cannot write '" + out_path + "'");
        f << text;
    } else {
        out << text;
    }
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s = "mfl";
    for (const auto& a : args) s += " " + a;
    return s;
}

// ---- field ----------------------------------------------------------------

int cmd_field_info(const std::string& field_spec, bool as_json, const std::string& out_path,
                   const std::vector<std::string>& args, std::ostream& out) {
    const FiniteField& f = FiniteField::parse(field_spec);
    json rep = make_report(join_args(args));
    json v;
    v["p"] = f.characteristic();
    v["n"] = f.degree();
    v["q"] = f.size();
    v["modulus"] = f.modulus();
    v["closed_under_sqrt"] = f.closed_under_sqrt();
    add_result(rep, "field-info", true, v);
    emit(rep, as_json, out_path, out);
    return 0;
}

int cmd_field_zorn(const std::string& field_spec, const std::string& a_text,
                   const std::string& b_text, bool as_json, const std::string& out_path,
                   const std::vector<std::string>& args, std::ostream& out) {
    const FiniteField& f = FiniteField::parse(field_spec);
    ZornMatrix a = parse_zorn(f, a_text);
    json rep = make_report(join_args(args));
    json v;
    v["a"] = to_string(a);
    v["trace"] = trace(a).str();
    v["norm"] = norm(a).str();
    if (!norm(a).is_zero()) v["inverse"] = to_string(zinv(a));
    if (!b_text.empty()) {
        ZornMatrix b = parse_zorn(f, b_text);
        v["b"] = to_string(b);
        v["product"] = to_string(zmul(a, b));
    }
    add_result(rep, "zorn-eval", true, v);
    emit(rep, as_json, out_path, out);
    return 0;
}

// ---- paige ----------------------------------------------------------------

int cmd_paige_build(const std::string& field_spec, bool with_units, bool allow_large,
                    const std::string& emit_which, const std::string& out_path, bool as_json,
                    const std::string& report_path, const std::vector<std::string>& args,
                    std::ostream& out, std::ostream& err) {
    const FiniteField& f = FiniteField::parse(field_spec);
    PaigeOptions opts;
    opts.allow_large = allow_large;
    opts.progress = &err;

    PaigeBundle b = build_m(f, opts);
    json rep = make_report(join_args(args));
    json v;
    v["field"] = field_spec;
    v["m0_order"] = b.m0.order();
    v["m_order"] = b.m->order();
    std::optional<ZornLoop> units;
    if (with_units) {
        units = build_unit_loop(f, opts);
        v["units_order"] = units->loop.order();
    }
    add_result(rep, "paige-build", true, v);

    const FiniteLoop* to_emit = &b.m0;
    if (emit_which == "m") to_emit = &*b.m;
    else if (emit_which == "units") {
        if (!units) throw Error(Errc::bad_input, "--emit units requires --with-units");
        to_emit = &units->loop;
    } else if (emit_which != "m0") {
        throw Error(Errc::bad_input, "--emit must be one of m0, m, units");
    }
    if (!out_path.empty()) {
        std::ofstream tf(out_path);
        if (!tf) throw Error(Errc::bad_input, "cannot write '" + out_path + "'");
        write_table(tf, *to_emit);
    } else if (!as_json && report_path.empty()) {
        write_table(out, *to_emit);
    }
    if (as_json || !report_path.empty()) emit(rep, true, report_path, out);
    return 0;
}

int cmd_paige_classify(const std::string& field_spec, bool as_json, const std::string& out_path,
                       const std::vector<std::string>& args, std::ostream& out) {
    const FiniteField& f = FiniteField::parse(field_spec);
    ClassificationReport r = classify_embeddability(f.characteristic(), f.degree());
    json rep = make_report(join_args(args));
    json v;
    v["p"] = r.p;
    v["n"] = r.n;
    v["q"] = r.q;
    v["characteristic_two"] = r.characteristic_two;
    v["computed_closed_under_sqrt"] = r.computed_closed_under_sqrt;
    v["parity_claim_closed"] = r.parity_claim_closed;
    v["claims_disagree"] = r.claims_disagree;
    v["verdict"] = r.verdict;
    add_result(rep, "classify-embeddability", true, v);
    emit(rep, as_json, out_path, out);
    return 0;
}

// ---- loop -----------------------------------------------------------------

int cmd_loop_check(const std::string& table_path, bool moufang, bool ip, bool assoc, bool simple,
                   bool full, int max_order, std::uint64_t seed, bool as_json,
                   const std::string& out_path, const std::vector<std::string>& args,
                   std::ostream& out) {
    TableInput t = load_table(table_path);
    CheckPolicy policy;
    policy.seed = seed;
    if (full) policy.mode = CheckPolicy::Mode::exhaustive;
    if (max_order > 0) policy.exhaustive_cutoff = max_order;

    json rep = make_report(join_args(args));
    rep["inputs"] = {{"table", {{"path", t.path}, {"digest", t.digest}, {"order", t.loop.order()}}}};
    if (moufang) add_result(rep, "moufang", is_moufang(t.loop, policy));
    if (ip) add_result(rep, "ip", is_ip_loop(t.loop));
    if (assoc) add_result(rep, "associative", is_associative(t.loop, policy));
    if (simple) {
        // full scan up to the cutoff, seeded singleton sample above it
        bool small = full || t.loop.order() <= policy.exhaustive_cutoff;
        add_result(rep, small ? "simple" : "simple-sampled",
                   small ? is_simple(t.loop) : is_simple_sampled(t.loop, 16, seed));
    }
    emit(rep, as_json, out_path, out);
    return all_passed(rep) ? 0 : 1;
}

int cmd_loop_series(const std::string& table_path, const std::string& kind, bool as_json,
                    const std::string& out_path, const std::vector<std::string>& args,
                    std::ostream& out) {
    TableInput t = load_table(table_path);
    SeriesReport series;
    if (kind == "upper") series = upper_central_series(t.loop);
    else if (kind == "lower") series = lower_central_series(t.loop, LcsMode::general);
    else if (kind == "lower-moufang") series = lower_central_series(t.loop, LcsMode::moufang);
    else throw Error(Errc::bad_input, "--kind must be upper, lower, or lower-moufang");

    json rep = make_report(join_args(args));
    rep["inputs"] = {{"table", {{"path", t.path}, {"digest", t.digest}, {"order", t.loop.order()}}}};
    json v = json::parse(series_to_json(series));
    add_result(rep, "series", true, v);
    emit(rep, as_json, out_path, out);
    return 0;
}

int cmd_loop_center(const std::string& table_path, bool as_json, const std::string& out_path,
                    const std::vector<std::string>& args, std::ostream& out) {
    TableInput t = load_table(table_path);
    SubloopRef z = center(t.loop);
    json rep = make_report(join_args(args));
    rep["inputs"] = {{"table", {{"path", t.path}, {"digest", t.digest}, {"order", t.loop.order()}}}};
    add_result(rep, "center", true, json(z.members()));
    emit(rep, as_json, out_path, out);
    return 0;
}

// ---- algebra ----------------------------------------------------------------

int cmd_algebra_omega(const std::string& table_path, const std::string& field_spec,
                      const std::string& subloop_csv, int cap, const std::string& report_path,
                      bool as_json, const std::vector<std::string>& args, std::ostream& out) {
    TableInput t = load_table(table_path);
    const FiniteField& f = FiniteField::parse(field_spec);

    IdealHandle om = [&] {
        if (subloop_csv.empty()) return omega_ideal(t.loop, f);
        std::vector<int> members;
        std::stringstream ss(subloop_csv);
        std::string item;
        while (std::getline(ss, item, ',')) members.push_back(std::stoi(item));
        return omega_ideal(t.loop, f, SubloopRef(t.loop, members));
    }();

    json rep = make_report(join_args(args));
    rep["inputs"] = {{"table", {{"path", t.path}, {"digest", t.digest}, {"order", t.loop.order()}}},
                     {"field", field_spec}};

    auto chain = ideal_power_chain(om, cap > 0 ? static_cast<std::size_t>(cap) : 0);
    json dims = json::array();
    for (const Subspace& s : chain) dims.push_back(s.rank());
    auto index = nilpotency_index(om, cap > 0 ? static_cast<std::size_t>(cap) : 0);
    json v;
    v["ideal"] = om.description;
    v["power_dims"] = dims;
    v["nilpotency_index"] = index ? json(*index) : json("none");
    add_result(rep, "omega", true, v);

    // deeper checks where the hypotheses apply
    if (subloop_csv.empty()) {
        bool p_loop = true;
        for (int g = 0; g < t.loop.order() && p_loop; ++g) {
            int k = element_order(t.loop, g);
            while (k % static_cast<int>(f.characteristic()) == 0) k /= f.characteristic();
            p_loop = k == 1;
        }
        if (f.degree() == 1 && p_loop && is_moufang(t.loop)) {
            PLoopOmegaReport ploop_rep = p_loop_omega_check(t.loop, f.characteristic());
            add_result(rep, "omega-nilpotent-for-p-loop", ploop_rep.ok(),
                       ploop_rep.index ? json(*ploop_rep.index) : json("none"));
        }
        OmegaChainBoundReport chain_rep = omega_chain_bound_check(t.loop, f);
        if (chain_rep.applicable) {
            json lv;
            lv["class_bound"] = *chain_rep.class_bound;
            lv["computed_class"] = chain_rep.computed_class ? json(*chain_rep.computed_class) : json("none");
            add_result(rep, "lower-series-chain-inclusion", chain_rep.ok(), lv);
        } else {
            add_result(rep, "lower-series-chain-inclusion", true, "inapplicable: omega not nilpotent");
        }
    }

    emit(rep, as_json || !report_path.empty(), report_path, out);
    return all_passed(rep) ? 0 : 1;
}

// ---- corpus -----------------------------------------------------------------

int cmd_corpus_list(bool as_json, const std::string& out_path,
                    const std::vector<std::string>& args, std::ostream& out) {
    json rep = make_report(join_args(args));
    rep["results"] = json::array();
    for (const CorpusEntry& e : corpus()) {
        json v;
        v["order"] = e.loop.order();
        v["tags"] = e.tags;
        json r;
        r["name"] = e.name;
        r["pass"] = true;
        r["value"] = v;
        rep["results"].push_back(r);
    }
    emit(rep, as_json, out_path, out);
    return 0;
}

int cmd_corpus_emit(const std::string& name, const std::string& out_path, std::ostream& out) {
    const CorpusEntry& e = corpus_entry(name);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw Error(Errc::bad_input, "cannot write '" + out_path + "'");
        write_table(f, e.loop);
    } else {
        write_table(out, e.loop);
    }
    return 0;
}

// ---- verify-all ---------------------------------------------------------------

int cmd_verify_all(std::uint64_t seed, bool timing, bool as_json, const std::string& out_path,
                   const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    acceptance::Options opts;
    opts.seed = seed;
    opts.progress = &err;
    auto results = acceptance::run_all(opts);

    json rep = make_report(join_args(args));
    rep["seed"] = seed;
    rep["results"] = json::array();
    for (const auto& r : results) {
        json item;
        item["name"] = std::to_string(r.id) + "-" + r.name;
        item["pass"] = r.pass;
        item["value"] = r.detail;
        if (timing) item["ms"] = r.ms;
        rep["results"].push_back(item);
    }
    if (as_json || !out_path.empty()) {
        emit(rep, true, out_path, out);
    } else {
        bool ok = acceptance::print_results(out, results);
        return ok ? 0 : 1;
    }
    return all_passed(rep) ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite Moufang loop and alternative algebra toolkit"};
    app.require_subcommand(1);

    std::string field_spec, table_path, out_path, report_path, a_text, b_text, emit_which = "m0";
    std::string series_kind = "upper", subloop_csv, corpus_name;
    bool as_json = false, with_units = false, allow_large = false, timing = false;
    bool moufang = false, ip = false, assoc = false, simple = false, full = false;
    int max_order = 0, cap = 0;
    std::uint64_t seed = kDefaultSeed;

    auto* field = app.add_subcommand("field", "finite field operations");
    auto* field_info = field->add_subcommand("info", "field parameters and square-root closure");
    field_info->add_option("--field", field_spec, "field spec p^n")->required();
    field_info->add_flag("--json", as_json);
    field_info->add_option("--out", out_path);
    auto* field_zorn = field->add_subcommand("zorn", "evaluate Zorn matrix expressions");
    field_zorn->add_option("--field", field_spec)->required();
    field_zorn->add_option("--a", a_text, "matrix '(a1, a2 | x,y,z | x,y,z)'")->required();
    field_zorn->add_option("--b", b_text, "optional second matrix; prints the product");
    field_zorn->add_flag("--json", as_json);
    field_zorn->add_option("--out", out_path);

    auto* paige = app.add_subcommand("paige", "Paige loop construction and classification");
    auto* paige_build = paige->add_subcommand("build", "build M0(F) and M(F)");
    paige_build->add_option("--field", field_spec)->required();
    paige_build->add_flag("--with-units", with_units, "also build the unit loop U(F)");
    paige_build->add_flag("--allow-large", allow_large, "lift the construction guards");
    paige_build->add_option("--emit", emit_which, "table to emit: m0 (default), m, units");
    paige_build->add_option("--out", out_path, "write the emitted table here");
    paige_build->add_option("--report", report_path, "write a JSON report here");
    paige_build->add_flag("--json", as_json);
    auto* paige_classify = paige->add_subcommand("classify", "embeddability classification");
    paige_classify->add_option("--field", field_spec)->required();
    paige_classify->add_flag("--json", as_json);
    paige_classify->add_option("--out", out_path);

    auto* loop = app.add_subcommand("loop", "loop predicates and series");
    auto* loop_check = loop->add_subcommand("check", "evaluate loop laws");
    loop_check->add_option("--table", table_path)->required();
    loop_check->add_flag("--moufang", moufang);
    loop_check->add_flag("--ip", ip);
    loop_check->add_flag("--assoc", assoc);
    loop_check->add_flag("--simple", simple);
    loop_check->add_flag("--full", full, "exhaustive triple checks regardless of order");
    loop_check->add_option("--max-order", max_order, "exhaustive cutoff override");
    loop_check->add_option("--seed", seed, "seed for sampled checks");
    loop_check->add_flag("--json", as_json);
    loop_check->add_option("--out", out_path);
    auto* loop_series = loop->add_subcommand("series", "central series report");
    loop_series->add_option("--table", table_path)->required();
    loop_series->add_option("--kind", series_kind, "upper (default), lower, lower-moufang");
    loop_series->add_flag("--json", as_json);
    loop_series->add_option("--out", out_path);
    auto* loop_center = loop->add_subcommand("center", "center members");
    loop_center->add_option("--table", table_path)->required();
    loop_center->add_flag("--json", as_json);
    loop_center->add_option("--out", out_path);

    auto* algebra = app.add_subcommand("algebra", "loop algebra and augmentation ideals");
    auto* algebra_omega = algebra->add_subcommand("omega", "augmentation ideal powers");
    algebra_omega->add_option("--table", table_path)->required();
    algebra_omega->add_option("--field", field_spec)->required();
    algebra_omega->add_option("--subloop", subloop_csv, "members of a normal subloop, e.g. 0,2");
    algebra_omega->add_option("--cap", cap, "power cap (default |Q|+1)");
    algebra_omega->add_option("--report", report_path, "write the JSON report here");
    algebra_omega->add_flag("--json", as_json);

    auto* corpus_cmd = app.add_subcommand("corpus", "fixed test corpus");
    auto* corpus_list = corpus_cmd->add_subcommand("list", "list entries and tags");
    corpus_list->add_flag("--json", as_json);
    corpus_list->add_option("--out", out_path);
    auto* corpus_emit = corpus_cmd->add_subcommand("emit", "write a corpus table");
    corpus_emit->add_option("--name", corpus_name)->required();
    corpus_emit->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify-all", "run the full verification suite");
    verify->add_option("--seed", seed, "seed for sampled checks");
    verify->add_flag("--timing", timing, "include timings in the JSON report");
    verify->add_flag("--json", as_json);
    verify->add_option("--out", out_path);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (field_info->parsed()) return cmd_field_info(field_spec, as_json, out_path, args, out);
        if (field_zorn->parsed())
            return cmd_field_zorn(field_spec, a_text, b_text, as_json, out_path, args, out);
        if (paige_build->parsed())
            return cmd_paige_build(field_spec, with_units, allow_large, emit_which, out_path,
                                   as_json, report_path, args, out, err);
        if (paige_classify->parsed())
            return cmd_paige_classify(field_spec, as_json, out_path, args, out);
        if (loop_check->parsed())
            return cmd_loop_check(table_path, moufang, ip, assoc, simple, full, max_order, seed,
                                  as_json, out_path, args, out);
        if (loop_series->parsed())
            return cmd_loop_series(table_path, series_kind, as_json, out_path, args, out);
        if (loop_center->parsed()) return cmd_loop_center(table_path, as_json, out_path, args, out);
        if (algebra_omega->parsed())
            return cmd_algebra_omega(table_path, field_spec, subloop_csv, cap, report_path, as_json,
                                     args, out);
        if (corpus_list->parsed()) return cmd_corpus_list(as_json, out_path, args, out);
        if (corpus_emit->parsed()) return cmd_corpus_emit(corpus_name, out_path, out);
        if (verify->parsed())
            return cmd_verify_all(seed, timing, as_json, out_path, args, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace mfl::cli
