#ifndef QMC_POINT_SET_HPP
#define QMC_POINT_SET_HPP

#include <cstddef>
#include <fstream>
#include <iosfwd>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmc/common.hpp"

namespace qmc {

// Ordered list of points in the unit cube, stored flat (row per point).
// Generators that intersect a lattice with the closed cube may carry
// coordinates equal to 1.0; everything else stays in [0,1).
class PointSet {
  public:
    PointSet() = default;
    PointSet(int dim, std::string provenance)
        : dim_(dim), provenance_(std::move(provenance)) {
        if (dim < 1) throw invalid_parameter("PointSet: dim must be positive");
    }

    int dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }
    double coord(std::size_t i, int j) const { return coords_[i * dim_ + j]; }
    const std::vector<double>& raw() const { return coords_; }

    void push_back(std::span<const double> p) {
        if (static_cast<int>(p.size()) != dim_)
            throw invalid_parameter("PointSet: point has wrong dimension");
        coords_.insert(coords_.end(), p.begin(), p.end());
    }
    void push_back(std::initializer_list<double> p) {
        push_back(std::span<const double>(p.begin(), p.size()));
    }

    // Coordinates must lie in [0,1); used by generators that promise it.
    void check_unit_halfopen() const {
        for (double c : coords_)
            if (!(c >= 0.0 && c < 1.0))
                throw numeric_failure("PointSet: coordinate outside [0,1)");
    }

    PointSet permuted_coords(std::span<const int> perm) const {
        PointSet out(dim_, provenance_ + ":permuted");
        std::vector<double> buf(dim_);
        for (std::size_t i = 0; i < size(); ++i) {
            for (int j = 0; j < dim_; ++j) buf[j] = coord(i, perm[j]);
            out.push_back(buf);
        }
        return out;
    }

  private:
    int dim_ = 0;
    std::string provenance_;
    std::vector<double> coords_;
};

// ---------------------------------------------------------------------------
// Text format, one point per line:
//   # qmcpoints v1 dim=<d> count=<m> provenance=<tag>
//   <x1> <x2> ... <xd>

inline void write_point_set(std::ostream& os, const PointSet& ps) {
    os << "# qmcpoints v1 dim=" << ps.dim() << " count=" << ps.size()
       << " provenance=" << ps.provenance() << "\n";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (int j = 0; j < ps.dim(); ++j) {
            if (j) os << ' ';
            os << format_double(ps.coord(i, j));
        }
        os << "\n";
    }
}

inline void write_point_set(const std::string& path, const PointSet& ps) {
    std::ofstream f(path);
    if (!f) throw invalid_parameter("cannot open for writing: " + path);
    write_point_set(f, ps);
}

inline PointSet read_point_set(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw invalid_parameter("point file: empty input");
    int dim = 0;
    std::size_t count = 0;
    std::string provenance;
    {
        std::istringstream hs(header);
        std::string tok;
        hs >> tok;  // '#'
        std::string magic, version;
        hs >> magic >> version;
        if (tok != "#" || magic != "qmcpoints" || version != "v1")
            throw invalid_parameter("point file: bad header: " + header);
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            if (key == "dim") dim = std::stoi(val);
            else if (key == "count") count = std::stoul(val);
            else if (key == "provenance") provenance = val;
        }
    }
    if (dim < 1) throw invalid_parameter("point file: missing dim");
    PointSet ps(dim, provenance);
    std::string line;
    std::vector<double> buf(dim);
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        for (int j = 0; j < dim; ++j)
            if (!(ls >> buf[j]))
                throw invalid_parameter("point file: short line: " + line);
        ps.push_back(buf);
    }
    if (ps.size() != count)
        throw invalid_parameter("point file: count mismatch");
    return ps;
}

inline PointSet read_point_set(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw invalid_parameter("cannot open: " + path);
    return read_point_set(f);
}

}  // namespace qmc

#endif  // QMC_POINT_SET_HPP
