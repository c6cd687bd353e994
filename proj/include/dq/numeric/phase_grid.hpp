#pragma once

#include "json.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dq::numeric {

struct GridSpec {
    double q_min = -8, q_max = 8;
    double p_min = -8, p_max = 8;
    int nq = 129, np = 129;

    double dq() const { return nq > 1 ? (q_max - q_min) / (nq - 1) : 0.0; }
    double dp() const { return np > 1 ? (p_max - p_min) / (np - 1) : 0.0; }
    double q(int i) const { return q_min + i * dq(); }
    double p(int j) const { return p_min + j * dp(); }
    /// Area element of the Riemann sum.
    double cell() const { return dq() * dp(); }

    void validate() const
    {
        if (nq < 2 || np < 2) throw std::invalid_argument("grid needs at least two points per axis");
        if (!(q_max > q_min) || !(p_max > p_min)) throw std::invalid_argument("grid ranges must be increasing");
    }

    static GridSpec square(double half_width, int points) { return {-half_width, half_width, -half_width, half_width, points, points}; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Complex samples on a uniform (q, p) grid, stored row-major with p fastest.
class PhaseGrid {
public:
    PhaseGrid() = default;
    explicit PhaseGrid(const GridSpec& spec) : spec_(spec), values_(static_cast<std::size_t>(spec.nq) * spec.np)
    {
        spec.validate();
    }

    static PhaseGrid sample(const GridSpec& spec, const std::function<std::complex<double>(double q, double p)>& f)
    {
        PhaseGrid g(spec);
        for (int i = 0; i < spec.nq; ++i)
            for (int j = 0; j < spec.np; ++j) g(i, j) = f(spec.q(i), spec.p(j));
        return g;
    }

    const GridSpec& spec() const { return spec_; }
    std::complex<double>& operator()(int iq, int ip) { return values_[index(iq, ip)]; }
    const std::complex<double>& operator()(int iq, int ip) const { return values_[index(iq, ip)]; }
    const std::vector<std::complex<double>>& values() const { return values_; }
    std::vector<std::complex<double>>& values() { return values_; }

    std::size_t index(int iq, int ip) const { return static_cast<std::size_t>(iq) * spec_.np + ip; }

    /// Riemann sum of the samples times the cell area.
    std::complex<double> integral() const
    {
        std::complex<double> s = 0;
        for (const auto& v : values_) s += v;
        return s * spec_.cell();
    }

    double max_abs() const
    {
        double m = 0;
        for (const auto& v : values_) m = std::max(m, std::abs(v));
        return m;
    }
    double max_imag() const
    {
        double m = 0;
        for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
        return m;
    }
    /// Largest modulus on the outermost ring of grid points.
    double boundary_max() const
    {
        double m = 0;
        for (int i = 0; i < spec_.nq; ++i)
            for (int j = 0; j < spec_.np; ++j)
                if (i == 0 || j == 0 || i == spec_.nq - 1 || j == spec_.np - 1) m = std::max(m, std::abs((*this)(i, j)));
        return m;
    }

    void write_csv(std::ostream& os, double hbar) const
    {
        char buf[128];
        std::snprintf(buf, sizeof buf, "# q_min=%.17g q_max=%.17g nq=%d\n", spec_.q_min, spec_.q_max, spec_.nq);
        os << buf;
        std::snprintf(buf, sizeof buf, "# p_min=%.17g p_max=%.17g np=%d\n", spec_.p_min, spec_.p_max, spec_.np);
        os << buf;
        std::snprintf(buf, sizeof buf, "# hbar=%.17g\n", hbar);
        os << buf << "q,p,re,im\n";
        for (int i = 0; i < spec_.nq; ++i) {
            for (int j = 0; j < spec_.np; ++j) {
                const auto v = (*this)(i, j);
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", spec_.q(i), spec_.p(j), v.real(), v.imag());
                os << buf;
            }
        }
    }

    static PhaseGrid read_csv(std::istream& is, double* hbar = nullptr)
    {
        GridSpec s;
        double h = 0;
        std::string line;
        if (!std::getline(is, line) || std::sscanf(line.c_str(), "# q_min=%lg q_max=%lg nq=%d", &s.q_min, &s.q_max, &s.nq) != 3)
            throw std::runtime_error("csv: bad q header");
        if (!std::getline(is, line) || std::sscanf(line.c_str(), "# p_min=%lg p_max=%lg np=%d", &s.p_min, &s.p_max, &s.np) != 3)
            throw std::runtime_error("csv: bad p header");
        if (!std::getline(is, line) || std::sscanf(line.c_str(), "# hbar=%lg", &h) != 1)
            throw std::runtime_error("csv: bad hbar header");
        if (!std::getline(is, line) || line != "q,p,re,im") throw std::runtime_error("csv: missing column header");
        PhaseGrid g(s);
        for (auto& v : g.values_) {
            double q, p, re, im;
            if (!std::getline(is, line) || std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg", &q, &p, &re, &im) != 4)
                throw std::runtime_error("csv: truncated data");
            v = {re, im};
        }
        if (hbar) *hbar = h;
        return g;
    }

    nlohmann::json sidecar(double hbar, const std::string& what) const
    {
        return {{"schema", "phase-grid/1"},
                {"quantity", what},
                {"hbar", hbar},
                {"layout", "row-major, p fastest"},
                {"q", {{"min", spec_.q_min}, {"max", spec_.q_max}, {"n", spec_.nq}}},
                {"p", {{"min", spec_.p_min}, {"max", spec_.p_max}, {"n", spec_.np}}}};
    }

    /// Writes `<stem>.csv` and `<stem>.json`.
    void save(const std::string& stem, double hbar, const std::string& what) const
    {
        std::ofstream csv(stem + ".csv");
        if (!csv) throw std::runtime_error("cannot write " + stem + ".csv");
        write_csv(csv, hbar);
        std::ofstream js(stem + ".json");
        js << sidecar(hbar, what).dump(2) << "\n";
    }

private:
    GridSpec spec_;
    std::vector<std::complex<double>> values_;
};

} // namespace dq::numeric
