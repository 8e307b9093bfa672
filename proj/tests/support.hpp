// Shared helpers for the unit and acceptance tests.
#pragma once

#include "biext/biext.hpp"
#include "oracles/finite_groups.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace testing_support {

using namespace biext;

inline std::vector<std::int64_t> to_int64(const std::vector<Integer>& v) {
    std::vector<std::int64_t> out;
    for (const auto& x : v) out.push_back(x.to_int64());
    return out;
}

// Torsion invariants of a finite group; throws on a free part.
inline std::vector<std::int64_t> finite_invariants(const FgAbGroup& g) {
    if (g.free_rank() != 0) throw std::logic_error("expected a finite group, got " + g.str());
    return to_int64(g.torsion());
}

inline oracle::Orders orders_of(const FgAbGroup& g) {
    oracle::Orders o;
    for (const auto& x : g.orders()) o.push_back(x.to_int64());
    return o;
}

inline oracle::Complex to_oracle(const TwoTermComplex& k) {
    oracle::Complex c{orders_of(k.A), orders_of(k.B), {}};
    const Matrix& m = k.u.matrix();
    c.u.assign(m.rows(), std::vector<std::int64_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c.u[i][j] = m(i, j).to_int64();
    return c;
}

inline FgAbGroup from_invariants(const std::vector<std::int64_t>& d) {
    std::vector<Integer> t(d.begin(), d.end());
    return FgAbGroup::normal(0, t);
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI from the project root; the document, if any, is passed through a temporary file.
inline CliResult run_cli(const std::string& args, const std::optional<std::string>& document = std::nullopt) {
    std::string cmd = "cd " + std::string(PROJECT_DIR) + " && " + BIEXTLAB_PATH;
    std::filesystem::path tmp;
    if (document) {
        tmp = std::filesystem::temp_directory_path() / ("biextlab_test_" + std::to_string(::getpid()) + ".bx");
        std::ofstream(tmp) << *document;
        cmd += " -i " + tmp.string();
    }
    cmd += " " + args + " 2>/dev/null";
    CliResult r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = ::pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (!tmp.empty()) std::filesystem::remove(tmp);
    return r;
}

inline std::string strip_timing(const std::string& s) {
    std::istringstream in(s);
    std::string line, out;
    while (std::getline(in, line))
        if (line.find("\"timing_ms\"") == std::string::npos) out += line + "\n";
    return out;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace testing_support
