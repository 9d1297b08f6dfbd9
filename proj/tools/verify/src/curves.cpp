#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "orderstats/order_statistics.hpp"
#include "orderstats/stochastic_orders.hpp"
#include "orderstats_verify/experiment.hpp"

namespace orderstats::verify {

namespace {

std::string number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& header) : path_(path), out_(path) {
        if (!out_) {
            throw std::runtime_error("cannot write " + path.string());
        }
        out_ << header << '\n';
    }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            out_ << (first ? "" : ",") << number(v);
            first = false;
        }
        out_ << '\n';
    }

    std::filesystem::path close() {
        out_.close();
        if (!out_) {
            throw std::runtime_error("failed writing " + path_.string());
        }
        return path_;
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace

std::vector<std::filesystem::path> emit_curves(const ExperimentConfig& config,
                                               const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw std::runtime_error("cannot create output directory " + out_dir.string() +
                                 (ec ? ": " + ec.message() : ""));
    }
    std::vector<std::filesystem::path> written;
    const RateVector rv(config.rates);

    if (config.requests("disp") || config.requests("star")) {
        const auto f = spacing_law(rv.homogenized(), config.i, config.j).law();
        const auto g = spacing_law(rv, config.i, config.j).law();
        const QuantileCurve curve = quantile_curve(*f, *g, config.grid);
        if (config.requests("disp")) {
            CsvWriter csv(out_dir / "disp.csv", "u,F_inv,G_inv,delta");
            for (std::size_t k = 0; k < curve.u.size(); ++k) {
                csv.row({curve.u[k], curve.f_inv[k], curve.g_inv[k], curve.g_inv[k] - curve.f_inv[k]});
            }
            written.push_back(csv.close());
        }
        if (config.requests("star")) {
            CsvWriter csv(out_dir / "star.csv", "u,F_inv,G_inv,ratio");
            for (std::size_t k = 0; k < curve.u.size(); ++k) {
                csv.row({curve.u[k], curve.f_inv[k], curve.g_inv[k], curve.g_inv[k] / curve.f_inv[k]});
            }
            written.push_back(csv.close());
        }
    }

    if (config.requests("si")) {
        const RateVector hom = rv.homogenized();
        CsvWriter csv(out_dir / "si.csv", "p,q,u,lhs,rhs");
        for (const auto& r : more_si_curve(conditional_family(rv, config.j), *min_law(rv),
                                           conditional_family(hom, config.j), *min_law(hom), config.grid)) {
            csv.row({r.p, r.q, r.u, r.lhs, r.rhs});
        }
        written.push_back(csv.close());
    }

    if (config.requests("pqd")) {
        const auto [hetero, homo] = pqd_copulas(config);
        CsvWriter csv(out_dir / "pqd.csv", "u,v,c_heterogeneous,c_homogeneous,difference");
        for (int a = 1; a <= hetero.resolution(); ++a) {
            for (int b = 1; b <= hetero.resolution(); ++b) {
                csv.row({hetero.coordinate(a), hetero.coordinate(b), hetero.at(a, b), homo.at(a, b),
                         hetero.at(a, b) - homo.at(a, b)});
            }
        }
        written.push_back(csv.close());
    }
    return written;
}

}  // namespace orderstats::verify
