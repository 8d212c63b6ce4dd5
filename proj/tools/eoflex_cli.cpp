#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eoflex/array.hpp"
#include "eoflex/codec.hpp"
#include "eoflex/decoder.hpp"
#include "eoflex/error.hpp"
#include "eoflex/metrics.hpp"
#include "eoflex/oracle.hpp"
#include "eoflex/shardio.hpp"

using namespace eoflex;

namespace {

const std::vector<std::array<int, 3>> kBenchDefaults = {
    {1, 5, 3}, {2, 5, 3}, {3, 5, 3}, {1, 7, 4}, {2, 7, 4},
    {1, 7, 5}, {1, 9, 3}, {2, 9, 3}, {3, 9, 3}, {1, 11, 7},
};

// Lines of "tau,p,k"; a header line and blank lines are skipped.
std::vector<CodeParams> read_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CodeError(ErrorCode::Io, "cannot open " + path);
    std::vector<CodeParams> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::int64_t tau, p, k;
        if (!(fields >> tau >> p >> k)) {
            if (lineno == 1) continue;
            throw CodeError(ErrorCode::InvalidParams, path + ":" + std::to_string(lineno) + ": expected tau,p,k");
        }
        out.push_back(validate_params(tau, p, k));
    }
    return out;
}

int verify(const CodeParams& cp, int trials, std::uint64_t seed) {
    const MdsReport oracle = mds_exhaustive_check(cp, trials, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    int ok = 0;
    for (const PairResult& pr : oracle.pairs) {
        const ErasurePattern pattern(cp, {pr.a, pr.b});
        int chain_failures = 0;
        std::string stall;
        for (int trial = 0; trial < trials; ++trial) {
            CodeArray a(cp, 1);
            for (auto& byte : a.bytes()) byte = static_cast<std::uint8_t>(rng());
            encode(a);
            CodeArray work = a;
            work.clear_column(pr.a);
            work.clear_column(pr.b);
            try {
                decode(work, pattern);
                if (!(work == a)) ++chain_failures;
            } catch (const CodeError& e) {
                ++chain_failures;
                stall = e.what();
            }
        }
        const bool pass = pr.failures == 0 && !pr.underdetermined && chain_failures == 0;
        std::cout << "columns " << pr.a << "," << pr.b << ": " << (pass ? "OK" : "FAIL");
        if (!pass) {
            std::cout << " (oracle " << (pr.underdetermined ? "underdetermined" : std::to_string(pr.failures) + " failures")
                      << ", chain " << chain_failures << "/" << trials << " failures";
            if (!stall.empty()) std::cout << ": " << stall;
            std::cout << ")";
        }
        std::cout << '\n';
        if (pass) ++ok;
    }
    std::cout << ok << "/" << oracle.pairs_tested() << " column pairs OK\n";
    return ok == oracle.pairs_tested() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eoflex: two-erasure binary array code"};
    app.require_subcommand(1);

    std::int64_t tau = 0, p = 0, k = 0;
    std::size_t lane_width = kDefaultShardLaneWidth;
    std::string input, dir, output, params_file;
    int trials = 100;
    std::uint64_t seed = 1;

    auto* enc = app.add_subcommand("encode", "Split a file into k+2 shard files");
    enc->add_option("--tau", tau, "Row multiplier")->required();
    enc->add_option("--p", p, "Odd ring parameter")->required();
    enc->add_option("--k", k, "Information columns")->required();
    enc->add_option("--lane-width", lane_width, "Bytes per cell")->check(CLI::PositiveNumber);
    enc->add_option("file", input, "Input file")->required();
    enc->add_option("dir", dir, "Output directory")->required();

    auto* dec = app.add_subcommand("decode", "Rebuild the original file from a shard directory");
    dec->add_option("dir", dir, "Shard directory")->required();
    dec->add_option("out", output, "Output file")->required();

    auto* ver = app.add_subcommand("verify", "Check every two-column erasure against the oracle");
    ver->add_option("--tau", tau, "Row multiplier")->required();
    ver->add_option("--p", p, "Odd ring parameter")->required();
    ver->add_option("--k", k, "Information columns")->required();
    ver->add_option("--trials", trials, "Random arrays per column pair")->check(CLI::PositiveNumber);
    ver->add_option("--seed", seed, "Random seed");

    auto* bench = app.add_subcommand("bench", "Print XOR counts and update complexity against the formulas");
    bench->add_option("--params-file", params_file, "CSV of tau,p,k rows");

    CLI11_PARSE(app, argc, argv);

    try {
        if (enc->parsed()) {
            const CodeParams cp = validate_params(tau, p, k);
            const auto paths = shard_file(input, cp, lane_width, dir);
            std::cout << "wrote " << paths.size() << " shards to " << dir << '\n';
            return 0;
        }
        if (dec->parsed()) {
            const ReconstructResult r = reconstruct(dir, output);
            std::cout << "restored " << r.bytes_written << " bytes";
            if (!r.missing.empty()) {
                std::cout << " (rebuilt columns";
                for (int c : r.missing) std::cout << ' ' << c;
                std::cout << ")";
            }
            std::cout << '\n';
            return 0;
        }
        if (ver->parsed()) return verify(validate_params(tau, p, k), trials, seed);
        if (bench->parsed()) {
            std::vector<CodeParams> list;
            if (params_file.empty()) {
                for (const auto& s : kBenchDefaults) list.push_back(validate_params(s[0], s[1], s[2]));
            } else {
                list = read_params_file(params_file);
            }
            const auto reports = complexity_report(list);
            write_text(std::cout, reports);
            std::cout << '\n';
            write_csv(std::cout, reports);
            return 0;
        }
    } catch (const CodeError& e) {
        std::cerr << "eoflex: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "eoflex: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
