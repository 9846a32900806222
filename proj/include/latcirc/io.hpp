#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace latcirc {

/// Input problems (missing file, malformed or out-of-range values); carries
/// the failing line number in the message.
class data_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Dataset {
    int m = 0;
    std::vector<int> observations;   // in observation order for sequence input
    bool from_frequencies = false;   // expanded counts; order is meaningless
};

enum class DataFormat { SequenceCsv, FrequencyCsv };

DataFormat data_format_from_name(const std::string& name);

/// sequence-csv: one outcome per line, observation order preserved.
/// frequency-csv: lines "r,count", expanded in ascending r.
Dataset ingest(const std::string& path, DataFormat format, int m);

}  // namespace latcirc
