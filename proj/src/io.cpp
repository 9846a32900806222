#include "latcirc/io.hpp"

#include <fstream>
#include <sstream>

namespace latcirc {

DataFormat data_format_from_name(const std::string& name) {
    if (name == "sequence" || name == "sequence-csv") return DataFormat::SequenceCsv;
    if (name == "frequency" || name == "frequency-csv") return DataFormat::FrequencyCsv;
    throw data_error("unknown data format: " + name);
}

namespace {

long long parse_int(const std::string& token, const std::string& path, int lineno) {
    std::size_t pos = 0;
    long long value = 0;
    try {
        value = std::stoll(token, &pos);
    } catch (const std::exception&) {
        throw data_error(path + ":" + std::to_string(lineno) + ": cannot parse '" + token +
                         "' as an integer");
    }
    if (pos != token.size())
        throw data_error(path + ":" + std::to_string(lineno) + ": trailing characters in '" + token +
                         "'");
    return value;
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Dataset ingest(const std::string& path, DataFormat format, int m) {
    if (m < 2) throw data_error("ingest: lattice size must be >= 2");
    std::ifstream in(path);
    if (!in) throw data_error("ingest: cannot open " + path);
    Dataset ds;
    ds.m = m;
    ds.from_frequencies = format == DataFormat::FrequencyCsv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trimmed(line);
        if (body.empty() || body[0] == '#') continue;
        if (format == DataFormat::SequenceCsv) {
            const long long v = parse_int(body, path, lineno);
            if (v < 0 || v >= m)
                throw data_error(path + ":" + std::to_string(lineno) + ": value " +
                                 std::to_string(v) + " outside lattice 0.." + std::to_string(m - 1));
            ds.observations.push_back(static_cast<int>(v));
        } else {
            const auto comma = body.find(',');
            if (comma == std::string::npos)
                throw data_error(path + ":" + std::to_string(lineno) +
                                 ": expected 'r,count' in frequency input");
            const long long r = parse_int(trimmed(body.substr(0, comma)), path, lineno);
            const long long count = parse_int(trimmed(body.substr(comma + 1)), path, lineno);
            if (r < 0 || r >= m)
                throw data_error(path + ":" + std::to_string(lineno) + ": value " +
                                 std::to_string(r) + " outside lattice 0.." + std::to_string(m - 1));
            if (count < 0)
                throw data_error(path + ":" + std::to_string(lineno) + ": negative count");
            for (long long i = 0; i < count; ++i) ds.observations.push_back(static_cast<int>(r));
        }
    }
    if (ds.observations.empty()) throw data_error("ingest: no observations in " + path);
    return ds;
}

}  // namespace latcirc
