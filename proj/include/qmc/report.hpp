#ifndef QMC_REPORT_HPP
#define QMC_REPORT_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "qmc/common.hpp"

namespace qmc {

using json = nlohmann::ordered_json;

inline json box_json(const AxisBox& b) {
    return json{{"lo", b.lo}, {"hi", b.hi}};
}

// Append-only JSON-lines report: one object per row, key order fixed so
// reruns are byte-identical.
class ReportWriter {
  public:
    ReportWriter() = default;
    explicit ReportWriter(const std::string& path, bool append = true) { open(path, append); }

    void open(const std::string& path, bool append = true) {
        out_.open(path, append ? std::ios::app : std::ios::trunc);
        if (!out_) throw invalid_parameter("cannot open report file: " + path);
    }

    bool is_open() const { return out_.is_open(); }

    void row(const json& obj) {
        if (!out_.is_open()) return;
        out_ << obj.dump() << "\n";
        out_.flush();
    }

    void metric_row(const std::string& metric, const json& params, double value,
                    bool exact, const json& witness = nullptr,
                    std::uint64_t budget = 0, std::uint64_t seed = 0) {
        row(json{{"metric", metric},
                 {"params", params},
                 {"value", value},
                 {"exact", exact},
                 {"witness", witness},
                 {"budget", budget},
                 {"seed", seed}});
    }

  private:
    std::ofstream out_;
};

}  // namespace qmc

#endif  // QMC_REPORT_HPP
