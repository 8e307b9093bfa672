// biextlab: command-line front end for the biextension engine.
#include "biext/biext.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace biext;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kParse = 1, kIllDefined = 2, kSizeGuard = 3, kStrict = 4, kInternal = 5 };

struct IoError : Error {
    using Error::Error;
};

struct Flags {
    std::string input = "-";
    bool json = false;
    bool strict = false;
    std::size_t max_order = 16;
};

json to_json(const Integer& x) {
    if (x.is_small()) return x.to_int64();
    return x.str();
}

json to_json(const FgAbGroup& g) {
    auto [r, t] = g.invariants();
    json tor = json::array();
    for (const auto& d : t) tor.push_back(to_json(d));
    return json{{"free_rank", r}, {"torsion", tor}};
}

json to_json(const Matrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        a.push_back(row);
    }
    return a;
}

std::string fingerprint(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::pair<int, std::string> classify(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return {kParse, "ParseError"};
    if (dynamic_cast<const UnknownName*>(&e)) return {kParse, "UnknownName"};
    if (dynamic_cast<const IoError*>(&e)) return {kParse, "IoError"};
    if (dynamic_cast<const IllDefinedHom*>(&e)) return {kIllDefined, "IllDefinedHom"};
    if (dynamic_cast<const InfiniteGroup*>(&e)) return {kIllDefined, "InfiniteGroup"};
    if (dynamic_cast<const SizeGuardExceeded*>(&e)) return {kSizeGuard, "SizeGuardExceeded"};
    if (dynamic_cast<const RouteMismatch*>(&e)) return {kInternal, "RouteMismatch"};
    if (dynamic_cast<const BicomplexInvalid*>(&e)) return {kInternal, "BicomplexInvalid"};
    if (dynamic_cast<const BlockLabelsMissing*>(&e)) return {kInternal, "BlockLabelsMissing"};
    if (dynamic_cast<const std::invalid_argument*>(&e)) return {kIllDefined, "InvalidInput"};
    return {kInternal, "InternalError"};
}

// One command run: a result payload, text lines and an exit code.
struct Outcome {
    json result = json::object();
    std::vector<std::string> text;
    int code = kOk;
};

json groups_json(std::initializer_list<std::pair<const char*, FgAbGroup>> gs) {
    json o = json::object();
    for (const auto& [k, g] : gs) o[k] = to_json(g);
    return o;
}

json verification_json(const VerificationReport& r, bool with_chain_level) {
    json o;
    o["instance"] = r.instance;
    o["hypotheses"] = {{"hom_vanishing", r.hom_vanishing}, {"ext1_vanishing", r.ext1_vanishing}, {"ker_d1_m11_trivial", r.ker_d1_m11_trivial}};
    o["geometric"] = groups_json({{"biext0", r.geometric[0]}, {"biext1", r.geometric[1]}});
    o["homological"] = groups_json({{"ext0", r.homological[0]}, {"ext1", r.homological[1]}});
    if (with_chain_level) o["chain_level"] = to_json(r.chain_level);
    o["verdicts"] = {{"degree0", r.verdict[0]}, {"degree1", r.verdict[1]}};
    o["witness"] = r.witness ? to_json(r.witness->matrix()) : json(nullptr);
    return o;
}

std::vector<std::string> verification_text(const VerificationReport& r) {
    auto b = [](bool x) { return x ? std::string("true") : std::string("false"); };
    return {"instance " + r.instance,
            "hypotheses hom_vanishing=" + b(r.hom_vanishing) + " ext1_vanishing=" + b(r.ext1_vanishing) + " ker_d1_m11_trivial=" + b(r.ker_d1_m11_trivial),
            "degree 0: geometric " + r.geometric[0].str() + ", homological " + r.homological[0].str() + ", verdict " + r.verdict[0],
            "degree 1: geometric " + r.geometric[1].str() + ", homological " + r.homological[1].str() + ", verdict " + r.verdict[1]};
}

Outcome run_snf(const std::string& file) {
    Matrix m = parse_matrix_text(read_text(file));
    auto s = snf(m);
    Outcome o;
    json diag = json::array();
    std::string line = "diagonal:";
    for (const auto& d : s.diag) {
        diag.push_back(to_json(d));
        line += " " + d.str();
    }
    o.result = {{"rows", m.rows()}, {"cols", m.cols()}, {"rank", s.rank}, {"diagonal", diag}, {"U", to_json(s.U)}, {"V", to_json(s.V)}};
    o.text = {"rank " + std::to_string(s.rank), line};
    return o;
}

Outcome run_homology(const Document& doc, const std::string& name, std::optional<int> degree) {
    ChainComplex c = doc.complex(name).chain();
    Outcome o;
    json h = json::object();
    std::vector<int> degrees = degree ? std::vector<int>{*degree} : std::vector<int>{0, 1};
    for (int n : degrees) {
        FgAbGroup g = homology(c, n);
        h[std::to_string(n)] = to_json(g);
        o.text.push_back("H_" + std::to_string(n) + "(" + name + ") = " + g.str());
    }
    o.result = {{"complex", name}, {"homology", h}};
    return o;
}

Outcome run_resolve(const Document& doc, const std::string& name, bool stats, const ResolutionLimits& lim) {
    TwoTermComplex k = doc.complex(name);
    auto r = canonical_resolution(k, lim);
    auto rep = check_partial_resolution(k, lim);
    Outcome o;
    o.result["complex"] = name;
    o.result["free_model"] = r.free_model;
    if (stats) {
        json ranks = json::object(), blocks = json::object();
        std::string line = "ranks";
        for (const Pos& pos : r.bicomplex.positions()) {
            Cell cell = r.bicomplex.cell(pos.first, pos.second);
            std::string key = "L" + std::to_string(pos.first) + std::to_string(pos.second);
            ranks[key] = cell.group.ngens();
            json labels = json::array();
            for (const auto& b : cell.blocks) labels.push_back(b.label());
            blocks[key] = labels;
            line += " " + key + "=" + std::to_string(cell.group.ngens());
        }
        o.result["ranks"] = ranks;
        o.result["blocks"] = blocks;
        o.text.push_back(line);
    }
    o.result["homology"] = {{"H0", to_json(rep.tot_h0)}, {"H1", to_json(rep.tot_h1)}};
    o.result["augmentation_quasi_iso"] = rep.ok();
    o.text.push_back("H_0(Tot) = " + rep.tot_h0.str());
    o.text.push_back("H_1(Tot) = " + rep.tot_h1.str());
    o.text.push_back(std::string("augmentation induces isomorphisms: ") + (rep.ok() ? "yes" : "no"));
    return o;
}

Outcome run_ext(const Document& doc, const std::string& n1, const std::string& n3, const ResolutionLimits& lim) {
    TwoTermComplex k1 = doc.complex(n1), k3 = doc.complex(n3);
    auto geo = ext_groups_geometric(k1, k3, lim);
    FgAbGroup h0 = derived_hom_group(k1.chain(), k3.chain(), 0), h1 = derived_hom_group(k1.chain(), k3.chain(), 1);
    Outcome o;
    o.result = {{"geometric", groups_json({{"ext0", geo.g0}, {"ext1", geo.g1}})}, {"homological", groups_json({{"ext0", h0}, {"ext1", h1}})}};
    o.text = {"geometric: Ext^0 = " + geo.g0.str() + ", Ext^1 = " + geo.g1.str(), "homological: Ext^0 = " + h0.str() + ", Ext^1 = " + h1.str()};
    return o;
}

Outcome run_biext(const Document& doc, const std::vector<std::string>& names, const std::string& side, const ResolutionLimits& lim) {
    TwoTermComplex k1 = doc.complex(names[0]), k2 = doc.complex(names[1]), k3 = doc.complex(names[2]);
    Outcome o;
    if (side == "geometric" || side == "both") {
        auto g = biext_groups_geometric(k1, k2, k3, lim);
        o.result["geometric"] = groups_json({{"biext0", g.g0}, {"biext1", g.g1}});
        o.text.push_back("geometric: Biext^0 = " + g.g0.str() + ", Biext^1 = " + g.g1.str());
    }
    if (side == "homological" || side == "both") {
        auto h = biext_groups_homological(k1, k2, k3);
        o.result["homological"] = groups_json({{"ext0", h.ext0}, {"ext1", h.ext1}});
        o.text.push_back("homological: Ext^0 = " + h.ext0.str() + ", Ext^1 = " + h.ext1.str());
    }
    return o;
}

Outcome run_verify(const Document& doc, const std::vector<std::string>& names, bool strict, const ResolutionLimits& lim) {
    TwoTermComplex k1 = doc.complex(names[0]), k2 = doc.complex(names[1]), k3 = doc.complex(names[2]);
    auto r = verify_main_theorem(pair_context(k1, k2, lim), k3, {true, false});
    Outcome o;
    o.result = verification_json(r, true);
    o.text = verification_text(r);
    o.text.push_back("chain level: " + r.chain_level.str());
    if (strict && !r.consistent()) o.code = kStrict;
    return o;
}

Outcome run_les(const Document& doc, const std::vector<std::string>& names, bool strict, const ResolutionLimits& lim) {
    TwoTermComplex k1 = doc.complex(names[0]), k2 = doc.complex(names[1]), k3 = doc.complex(names[2]);
    auto r = les_check(k1, k2, k3, lim);
    Outcome o;
    json nodes = json::array();
    for (const auto& n : r.nodes) {
        nodes.push_back({{"name", n.name}, {"group", to_json(n.group)}});
        o.text.push_back(n.name + " = " + n.group.str());
    }
    o.result["nodes"] = nodes;
    o.result["first_injective"] = r.first_injective;
    o.result["composite_zero"] = r.composite_zero;
    o.result["exact"] = r.exact;
    o.result["exact_sequence"] = r.ok();
    o.text.push_back(std::string("exact: ") + (r.ok() ? "yes" : "no"));
    if (strict && !r.ok()) o.code = kStrict;
    return o;
}

Outcome run_corpus(const std::string& dir, bool strict, const ResolutionLimits& lim, std::string& fp_text) {
    std::vector<fs::path> files;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw IoError("not a directory: '" + dir + "'");
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".bx") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<std::string> texts;
    for (const auto& f : files) {
        texts.push_back(read_text(f.string()));
        fp_text += f.filename().string() + "\n" + texts.back();
    }
    struct Item {
        json entry;
        std::string line;
        int code = kOk;
        std::string verdict0, verdict1;
    };
    auto work = [&](std::size_t i) {
        Item it;
        it.entry["file"] = files[i].filename().string();
        try {
            Document doc = parse_document(texts[i]);
            std::vector<std::string> names;
            if (doc.has_complex("K1") && doc.has_complex("K2") && doc.has_complex("K3")) names = {"K1", "K2", "K3"};
            else names = doc.complex_names();
            if (names.size() < 3) throw ParseError(1, 1, "a corpus file needs three complexes");
            auto r = verify_main_theorem(pair_context(doc.complex(names[0]), doc.complex(names[1]), lim), doc.complex(names[2]), {false, false});
            json v = verification_json(r, false);
            for (auto& [k, val] : v.items()) it.entry[k] = val;
            it.verdict0 = r.verdict[0];
            it.verdict1 = r.verdict[1];
            it.line = files[i].filename().string() + ": " + r.verdict[0] + " / " + r.verdict[1];
            if (strict && !r.consistent()) it.code = kStrict;
        } catch (const std::exception& e) {
            auto [code, kind] = classify(e);
            it.entry["error"] = {{"kind", kind}, {"message", e.what()}};
            it.line = files[i].filename().string() + ": error " + kind + ": " + e.what();
            it.code = code;
        }
        return it;
    };
    std::vector<std::future<Item>> futs;
    for (std::size_t i = 0; i < files.size(); ++i) futs.push_back(std::async(std::launch::async, work, i));
    Outcome o;
    json entries = json::array();
    std::size_t eq = 0, na = 0, ne = 0, errs = 0;
    for (auto& f : futs) {
        Item it = f.get();
        entries.push_back(it.entry);
        o.text.push_back(it.line);
        if (it.entry.contains("error")) ++errs;
        for (const auto* v : {&it.verdict0, &it.verdict1}) {
            if (*v == "equal") ++eq;
            else if (*v == "not-asserted") ++na;
            else if (*v == "unequal") ++ne;
        }
        if (o.code == kOk && it.code != kOk) o.code = it.code;
    }
    o.result["files"] = entries;
    o.result["summary"] = {{"files", files.size()}, {"equal", eq}, {"not_asserted", na}, {"unequal", ne}, {"errors", errs}};
    o.text.push_back("verdicts: " + std::to_string(eq) + " equal, " + std::to_string(na) + " not-asserted, " + std::to_string(ne) + " unequal; " + std::to_string(errs) + " errors");
    return o;
}

std::size_t resolve_max_order(const std::optional<std::size_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("BIEXTLAB_MAX_ORDER")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env) return static_cast<std::size_t>(v);
        std::cerr << "biextlab: ignoring malformed BIEXTLAB_MAX_ORDER='" << env << "'\n";
    }
    return 16;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extensions and biextensions of two-term complexes of abelian groups"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags flags;
    std::optional<std::size_t> max_order;
    app.add_option("-i,--input", flags.input, "Input document, '-' for stdin");
    app.add_flag("--json", flags.json, "Emit a JSON report");
    app.add_option("--max-order", max_order, "Size guard on |B| and |B1||B2| (default 16, env BIEXTLAB_MAX_ORDER)");
    app.add_flag("--strict", flags.strict, "Exit 4 on a failed verdict under satisfied hypotheses");

    std::string matrix_file, dir, side = "both";
    std::vector<std::string> names;
    std::optional<int> degree;
    bool stats = false;

    auto* c_snf = app.add_subcommand("snf", "Smith normal form of a matrix file");
    c_snf->add_option("matrix", matrix_file, "Matrix file")->required();
    auto* c_hom = app.add_subcommand("homology", "Homology of a two-term complex");
    c_hom->add_option("complex", names, "Complex name")->required()->expected(1);
    c_hom->add_option("--degree", degree, "Single degree");
    auto* c_res = app.add_subcommand("resolve", "Canonical partial resolution of a complex");
    c_res->add_option("complex", names, "Complex name")->required()->expected(1);
    c_res->add_flag("--stats", stats, "Component ranks and block labels");
    auto* c_ext = app.add_subcommand("ext", "Ext^0 and Ext^1 of K1 by K3");
    c_ext->add_option("complexes", names, "K1 K3")->required()->expected(2);
    auto* c_bi = app.add_subcommand("biext", "Biext^0 and Biext^1 of (K1, K2; K3)");
    c_bi->add_option("complexes", names, "K1 K2 K3")->required()->expected(3);
    c_bi->add_option("--side", side, "geometric, homological or both")->check(CLI::IsMember({"geometric", "homological", "both"}));
    auto* c_ver = app.add_subcommand("verify", "Compare geometric and homological groups");
    c_ver->add_option("complexes", names, "K1 K2 K3")->required()->expected(3);
    auto* c_les = app.add_subcommand("les", "Six-term sequence for 0 -> B3 -> K3 -> A3[1] -> 0");
    c_les->add_option("complexes", names, "K1 K2 K3")->required()->expected(3);
    auto* c_cor = app.add_subcommand("corpus-verify", "Verify every .bx file in a directory");
    c_cor->add_option("dir", dir, "Directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    flags.max_order = resolve_max_order(max_order);
    ResolutionLimits lim{flags.max_order};

    std::string echo;
    for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);

    auto t0 = std::chrono::steady_clock::now();
    std::string input_text;
    Outcome out;
    int code = kOk;
    json error = nullptr;
    try {
        if (c_snf->parsed()) {
            input_text = read_text(matrix_file);
            out = run_snf(matrix_file);
        } else if (c_cor->parsed()) {
            out = run_corpus(dir, flags.strict, lim, input_text);
        } else {
            input_text = read_text(flags.input);
            Document doc = parse_document(input_text);
            if (c_hom->parsed()) out = run_homology(doc, names[0], degree);
            else if (c_res->parsed()) out = run_resolve(doc, names[0], stats, lim);
            else if (c_ext->parsed()) out = run_ext(doc, names[0], names[1], lim);
            else if (c_bi->parsed()) out = run_biext(doc, names, side, lim);
            else if (c_ver->parsed()) out = run_verify(doc, names, flags.strict, lim);
            else if (c_les->parsed()) out = run_les(doc, names, flags.strict, lim);
        }
        code = out.code;
    } catch (const std::exception& e) {
        auto [c, kind] = classify(e);
        code = c;
        error = {{"kind", kind}, {"message", e.what()}};
        std::cerr << "biextlab: " << kind << ": " << e.what() << "\n";
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (flags.json) {
        json rep;
        rep["schema"] = 1;
        rep["command"] = echo;
        rep["input"] = {{"fingerprint", fingerprint(input_text)}};
        rep["timing_ms"] = static_cast<std::int64_t>(ms);
        if (error.is_null()) rep["result"] = out.result;
        else rep["error"] = error;
        rep["exit_code"] = code;
        std::cout << rep.dump(2) << "\n";
    } else if (error.is_null()) {
        for (const auto& l : out.text) std::cout << l << "\n";
    }
    return code;
}
