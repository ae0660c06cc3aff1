#include "qadis/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qadis::io {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& err) {
        throw DataError(path.string() + ": " + err.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
    if (!out) throw DataError("write failed for " + path.string());
}

std::uint64_t parse_count(const std::string& token, const std::filesystem::path& path,
                          std::size_t line_no) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size() || v < 0) throw std::invalid_argument(token);
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": bad count '" + token + "'");
    }
}

double parse_real(const std::string& token, const std::filesystem::path& path,
                  std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": bad number '" + token + "'");
    }
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream ss(line);
    while (std::getline(ss, token, ',')) out.push_back(token);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

IsingProblem load_problem(const std::filesystem::path& path) {
    const json j = read_json(path);
    try {
        const int n = j.at("n").get<int>();
        const double alpha = j.at("alpha").get<double>();
        std::vector<double> h = j.at("h").get<std::vector<double>>();
        std::vector<Coupler> couplers;
        for (const auto& c : j.at("couplers"))
            couplers.push_back({c.at("i").get<int>(), c.at("j").get<int>(),
                                c.at("value").get<double>()});
        return make_problem(n, std::move(h), couplers, alpha);
    } catch (const json::exception& err) {
        throw DataError(path.string() + ": " + err.what());
    } catch (const std::invalid_argument& err) {
        throw DataError(path.string() + ": " + err.what());
    }
}

void save_problem(const IsingProblem& problem, const std::filesystem::path& path) {
    json j;
    j["n"] = problem.n();
    j["alpha"] = problem.alpha;
    j["h"] = problem.h;
    json couplers = json::array();
    for (std::size_t e = 0; e < problem.graph.edges.size(); ++e) {
        couplers.push_back({{"i", problem.graph.edges[e].first},
                            {"j", problem.graph.edges[e].second},
                            {"value", problem.j[e]}});
    }
    j["couplers"] = std::move(couplers);
    write_text(path, j.dump(2) + "\n");
}

void save_spectrum_csv(const Spectrum& spectrum, const std::filesystem::path& path) {
    std::string out = "energy,degeneracy\n";
    for (const auto& level : spectrum.levels)
        out += format_double(level.energy) + "," + std::to_string(level.degeneracy) +
               "\n";
    write_text(path, out);
}

void save_distribution_csv(const OutputDistribution& dist, const IsingProblem& ideal,
                           const std::filesystem::path& path) {
    std::string out = "config_bits,ideal_energy,count,probability\n";
    for (const auto& [bits, count] : dist.counts) {
        const double e = energy(ideal, SpinConfiguration(bits, dist.n));
        out += std::to_string(bits) + "," + format_double(e) + "," +
               std::to_string(count) + "," +
               format_double(static_cast<double>(count) /
                             static_cast<double>(dist.total)) +
               "\n";
    }
    write_text(path, out);
}

OutputDistribution load_distribution_csv(const std::filesystem::path& path, int n) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    OutputDistribution dist;
    dist.n = n;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            if (line.rfind("config_bits,", 0) != 0)
                throw DataError(path.string() + ":1: missing distribution header");
            continue;
        }
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 4)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 4 columns");
        const std::uint64_t bits = parse_count(fields[0], path, line_no);
        const std::uint64_t count = parse_count(fields[2], path, line_no);
        if (n < 32 && bits >> n)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": config word wider than " + std::to_string(n) +
                            " qubits");
        if (count == 0) continue;
        dist.counts[static_cast<std::uint32_t>(bits)] += count;
        dist.total += count;
    }
    if (dist.total == 0)
        throw DataError(path.string() + ": no counts");
    return dist;
}

void save_levels_csv(const LevelDistribution& levels,
                     const std::filesystem::path& path) {
    std::string out = "energy,degeneracy,count,probability\n";
    for (const auto& entry : levels.entries) {
        const double count = entry.probability * static_cast<double>(levels.total);
        out += format_double(entry.energy) + "," + std::to_string(entry.degeneracy) +
               "," + std::to_string(static_cast<std::uint64_t>(std::llround(count))) +
               "," + format_double(entry.probability) + "\n";
    }
    write_text(path, out);
}

LevelDistribution load_levels_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    LevelDistribution levels;
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t total = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            if (line.rfind("energy,", 0) != 0)
                throw DataError(path.string() + ":1: missing levels header");
            continue;
        }
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 4)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 4 columns");
        LevelDistribution::Entry entry;
        entry.energy = parse_real(fields[0], path, line_no);
        entry.degeneracy = parse_count(fields[1], path, line_no);
        entry.probability = parse_real(fields[3], path, line_no);
        total += parse_count(fields[2], path, line_no);
        levels.entries.push_back(entry);
    }
    if (levels.entries.empty())
        throw DataError(path.string() + ": no levels");
    levels.total = total;
    return levels;
}

void save_histogram_csv(const LevelDistribution& levels,
                        const std::filesystem::path& path) {
    std::string out = "energy,probability\n";
    for (const auto& entry : levels.entries)
        out += format_double(entry.energy) + "," + format_double(entry.probability) +
               "\n";
    write_text(path, out);
}

OutputDistribution ingest_samples(const std::filesystem::path& path,
                                  const IsingProblem& problem) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;
    OutputDistribution dist;
    dist.n = problem.n();
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line.rfind("n=", 0) != 0)
                throw DataError(path.string() + ":1: expected header 'n=<int>'");
            const int declared =
                static_cast<int>(parse_count(line.substr(2), path, line_no));
            if (declared != problem.n())
                throw DataError(path.string() + ": declared width " +
                                std::to_string(declared) + " != problem size " +
                                std::to_string(problem.n()));
            continue;
        }
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected '<bitstring>,<occurrences>'");
        const std::string& bits_str = fields[0];
        if (static_cast<int>(bits_str.size()) != problem.n())
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": record width " + std::to_string(bits_str.size()) +
                            " != declared width " + std::to_string(problem.n()));
        std::uint32_t bits = 0;
        for (std::size_t k = 0; k < bits_str.size(); ++k) {
            if (bits_str[k] == '1')
                bits |= (1u << k);
            else if (bits_str[k] != '0')
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": bitstring must contain only 0 and 1");
        }
        const std::uint64_t occurrences = parse_count(fields[1], path, line_no);
        if (occurrences == 0)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": occurrences must be positive");
        dist.counts[bits] += occurrences;
        dist.total += occurrences;
    }
    if (dist.total == 0)
        throw DataError(path.string() + ": no sample rows");
    return dist;
}

void save_samples(const OutputDistribution& dist, const std::filesystem::path& path) {
    std::string out = "n=" + std::to_string(dist.n) + "\n";
    for (const auto& [bits, count] : dist.counts) {
        std::string bstr(static_cast<std::size_t>(dist.n), '0');
        for (int k = 0; k < dist.n; ++k)
            if ((bits >> k) & 1u) bstr[static_cast<std::size_t>(k)] = '1';
        out += bstr + "," + std::to_string(count) + "\n";
    }
    write_text(path, out);
}

Schedule load_schedule(const std::filesystem::path& path) {
    const json j = read_json(path);
    try {
        return Schedule(j.at("a").get<std::vector<double>>(),
                        j.at("b").get<std::vector<double>>());
    } catch (const json::exception& err) {
        throw DataError(path.string() + ": " + err.what());
    } catch (const std::invalid_argument& err) {
        throw DataError(path.string() + ": " + err.what());
    }
}

void save_fit_report(const BoltzmannFit& fit, const std::filesystem::path& path) {
    json j;
    j["beta"] = fit.beta;
    j["log_likelihood"] = fit.log_likelihood;
    j["mean_energy_residual"] = fit.mean_energy_residual;
    j["support_size"] = fit.support_size;
    write_text(path, j.dump(2) + "\n");
}

void save_state_csv(const QuantumState& state, const std::filesystem::path& path) {
    std::string out = "basis_index,re,im\n";
    for (std::size_t z = 0; z < state.amplitudes.size(); ++z)
        out += std::to_string(z) + "," + format_double(state.amplitudes[z].real()) +
               "," + format_double(state.amplitudes[z].imag()) + "\n";
    write_text(path, out);
}

}  // namespace qadis::io
