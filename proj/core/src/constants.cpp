#include "mslab/constants.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include <json.hpp>

#include "mslab/arith.hpp"
#include "mslab/errors.hpp"
#include "mslab/jet.hpp"
#include "mslab/kahan.hpp"
#include "mslab/parallel.hpp"
#include "zeta_internal.hpp"

namespace mslab {

namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;
using cld = std::complex<long double>;

long double factorial_ld(int n) {
    long double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

double stieltjes(unsigned k) {
    if (k > 3) throw ValidationError("stieltjes: only orders k <= 3 supported");
    const long N = 2000;
    const int J = 12;

    // f(x) = ln^k(x)/x. Derivatives stay in the form
    // sum_j c_j ln^j(x) x^{-(m+1)}; one step maps c_j -> (j+1)c_{j+1} - m c_j.
    CompensatedSum<long double> sum;
    for (long n = 1; n <= N; ++n) {
        long double ln_n = std::log((long double)n);
        sum.add(std::pow(ln_n, (long double)k) / (long double)n);
    }
    long double ln_N = std::log((long double)N);
    long double gamma_k = sum.value() - std::pow(ln_N, (long double)(k + 1)) / (k + 1);
    gamma_k -= 0.5L * std::pow(ln_N, (long double)k) / N;

    std::vector<long double> c(k + 2, 0.0L);
    c[k] = 1.0L;  // level m = 1
    int m = 1;
    for (int j = 1; j <= J; ++j) {
        int target = 2 * j - 1;  // f^{(2j-1)}
        while (m - 1 < target) {
            std::vector<long double> next(c.size(), 0.0L);
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i + 1 < c.size()) next[i] += (long double)(i + 1) * c[i + 1];
                next[i] -= (long double)m * c[i];
            }
            c = std::move(next);
            ++m;
        }
        long double deriv = 0;
        long double lnp = 1;
        for (std::size_t i = 0; i < c.size(); ++i) {
            deriv += c[i] * lnp;
            lnp *= ln_N;
        }
        deriv *= std::pow((long double)N, -(long double)(m));
        gamma_k -= detail::kBern2k[j - 1] / factorial_ld(2 * j) * deriv;
    }
    return double(gamma_k);
}

std::array<double, 4> zeta_derivatives(double s0) {
    if (!(s0 > 1.0)) throw ValidationError("zeta_derivatives: s0 > 1 required");
    using J = Jet<long double, 4>;
    const long N = 64;
    long double s = s0;

    auto exp_jet = [](long double value, long double rate) {
        // value * exp(rate * x)
        J j;
        long double f = 1;
        for (int i = 0; i < 4; ++i) {
            j.c[i] = value * f;
            f *= rate / (i + 1);
        }
        return j;
    };

    J total{};
    for (long n = 1; n < N; ++n) {
        long double ln_n = std::log((long double)n);
        J t = exp_jet(std::exp(-s * ln_n), -ln_n);
        for (int i = 0; i < 4; ++i) total.c[i] += t.c[i];
    }
    long double w = N;
    long double ln_w = std::log(w);

    J num = exp_jet(std::pow(w, 1 - s), -ln_w);
    J den{};
    den.c[0] = s - 1;
    den.c[1] = 1;
    total = total + num / den;

    J wms = exp_jet(std::pow(w, -s), -ln_w);
    total = total + wms * 0.5L;

    J poch{};
    poch.c[0] = s;
    poch.c[1] = 1;
    J wpow = wms * (1.0L / w);
    long double w2 = 1.0L / (w * w);
    long double fact = 2;
    for (int k = 1; k <= 15; ++k) {
        total = total + poch * wpow * (long double)(detail::kBern2k[k - 1] / fact);
        if (k < 15) {
            J f1{}, f2{};
            f1.c[0] = s + (2 * k - 1);
            f1.c[1] = 1;
            f2.c[0] = s + 2 * k;
            f2.c[1] = 1;
            poch = poch * f1 * f2;
            wpow = wpow * w2;
            fact *= (2 * k + 1) * (2 * k + 2);
        }
    }
    return {double(total.c[0]), double(total.c[1]), double(total.c[2] * 2), double(total.c[3] * 6)};
}

namespace {

template <class F>
std::complex<F> g1_impl(std::complex<F> s, uint32_t prime_bound) {
    const auto& primes = primes_upto(prime_bound);
    std::complex<F> prod(1, 0);
    for (uint32_t p : primes) {
        if (p > prime_bound) break;
        std::complex<F> u = std::exp(-s * std::log((F)p));
        std::complex<F> one(1, 0);
        prod *= (one + F(2) * u) / ((one - u) * (one + u) * (one + u) * (one + u));
    }
    return prod;
}

struct ContourNodes {
    unsigned nodes = 0;
    std::vector<cld> s;     // 1 + r e^{i phi_j}
    std::vector<cld> fval;  // F(s_j)
};

cld series_integrand(Series series, cld s, uint32_t prime_bound) {
    cld z = detail::hurwitz_em_impl<long double>(s, 1.0L);
    cld z2 = detail::hurwitz_em_impl<long double>(2.0L * s, 1.0L);
    cld z4 = z * z * z * z;
    if (series == Series::d2) return z4 / z2;
    return z4 / (z2 * z2 * z2) * g1_impl<long double>(s, prime_bound);
}

std::shared_ptr<const ContourNodes> contour_nodes(Series series, double radius, unsigned nodes,
                                                  uint32_t prime_bound) {
    static std::mutex mu;
    static std::map<std::tuple<int, uint64_t, unsigned, uint32_t>,
                    std::shared_ptr<const ContourNodes>>
        cache;
    uint64_t rbits;
    std::memcpy(&rbits, &radius, sizeof rbits);
    auto key = std::make_tuple(int(series), rbits, nodes, prime_bound);
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto built = std::make_shared<ContourNodes>();
    built->nodes = nodes;
    built->s.resize(nodes);
    built->fval.resize(nodes);
    long double r = radius;
    for (unsigned j = 0; j < nodes; ++j) {
        long double ph = 2.0L * kPiL * j / nodes;
        cld off(r * std::cos(ph), r * std::sin(ph));
        built->s[j] = cld(1.0L, 0.0L) + off;
        built->fval[j] = series_integrand(series, built->s[j], prime_bound);
    }
    std::lock_guard<std::mutex> g(mu);
    auto [it, inserted] = cache.emplace(key, built);
    return it->second;
}

// (1/M) sum_j F(s_j) x^{s_j} / s_j * (s_j - 1), the residue at s = 1.
cld residue_eval(long double x, const ContourNodes& nodes) {
    ComplexSumT<long double> acc;
    long double lx = std::log(x);
    for (unsigned j = 0; j < nodes.nodes; ++j) {
        cld s = nodes.s[j];
        cld xs = std::exp(s * lx);
        acc.add(nodes.fval[j] * xs / s * (s - cld(1.0L, 0.0L)));
    }
    return acc.value() * (1.0L / (long double)nodes.nodes);
}

long double residue_ld(double x, Series series, const ResidueOptions& opt) {
    auto n1 = contour_nodes(series, opt.radius, opt.nodes, opt.prime_bound);
    auto n2 = contour_nodes(series, opt.radius, opt.nodes * 2, opt.prime_bound);
    cld v1 = residue_eval(x, *n1);
    cld v2 = residue_eval(x, *n2);
    long double rel = std::abs(v2 - v1) / std::max(1.0L, std::abs(v2));
    if (rel > 1e-8L)
        throw PrecisionError("residue_main_term: node doubling drift " + std::to_string(double(rel)));
    if (std::abs(v2.imag()) > 1e-7L * std::max(1.0L, std::abs(v2.real())))
        throw PrecisionError("residue_main_term: imaginary leakage");
    return v2.real();
}

}  // namespace

complex euler_product_g1(complex s, uint32_t prime_bound) {
    if (!(s.real() > 0.34)) throw ValidationError("euler_product_g1: Re s > 1/3 required");
    return g1_impl<double>(s, prime_bound);
}

double residue_main_term(double x, Series series, const ResidueOptions& opt) {
    if (!(x >= 2.0)) throw ValidationError("residue_main_term: x >= 2 required");
    if (!(opt.radius > 0.0 && opt.radius < 0.5))
        throw ValidationError("residue_main_term: radius in (0, 1/2) required");
    return double(residue_ld(x, series, opt));
}

namespace {

// Least squares for the 4-coefficient cubic on a tall Vandermonde system,
// modified Gram-Schmidt QR with column scaling, long double throughout.
std::array<long double, 4> lsq_cubic(const std::vector<long double>& L,
                                     const std::vector<long double>& y) {
    std::size_t n = L.size();
    std::vector<std::array<long double, 4>> A(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double v = 1;
        for (int j = 3; j >= 0; --j) {  // columns: L^3, L^2, L, 1
            A[i][std::size_t(j)] = v;
            v *= L[i];
        }
    }
    std::array<long double, 4> scale{};
    for (int j = 0; j < 4; ++j) {
        long double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += A[i][j] * A[i][j];
        scale[j] = std::sqrt(s);
        for (std::size_t i = 0; i < n; ++i) A[i][j] /= scale[j];
    }
    std::array<std::array<long double, 4>, 4> R{};
    std::vector<long double> q(n);
    std::vector<std::array<long double, 4>> Q(n);
    for (int j = 0; j < 4; ++j) {
        for (std::size_t i = 0; i < n; ++i) q[i] = A[i][j];
        for (int p = 0; p < j; ++p) {
            long double dot = 0;
            for (std::size_t i = 0; i < n; ++i) dot += Q[i][p] * q[i];
            R[p][j] = dot;
            for (std::size_t i = 0; i < n; ++i) q[i] -= dot * Q[i][p];
        }
        long double nrm = 0;
        for (std::size_t i = 0; i < n; ++i) nrm += q[i] * q[i];
        nrm = std::sqrt(nrm);
        if (!(nrm > 0)) throw PrecisionError("main_term_coefficients: Vandermonde rank deficiency");
        R[j][j] = nrm;
        for (std::size_t i = 0; i < n; ++i) Q[i][j] = q[i] / nrm;
    }
    std::array<long double, 4> rhs{};
    for (int j = 0; j < 4; ++j) {
        long double dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += Q[i][j] * y[i];
        rhs[j] = dot;
    }
    std::array<long double, 4> c{};
    for (int j = 3; j >= 0; --j) {
        long double v = rhs[j];
        for (int p = j + 1; p < 4; ++p) v -= R[j][p] * c[p];
        c[j] = v / R[j][j];
    }
    for (int j = 0; j < 4; ++j) c[j] /= scale[j];
    return c;
}

std::array<long double, 4> fit_at_radius(Series series, double radius, const ResidueOptions& base) {
    ResidueOptions opt = base;
    opt.radius = radius;
    std::vector<long double> L, y;
    for (double x : {1e3, 1e4, 1e5, 1e6, 1e7, 1e8}) {
        long double res = residue_ld(x, series, opt);
        L.push_back(std::log((long double)x));
        y.push_back(res / (long double)x);
    }
    return lsq_cubic(L, y);
}

}  // namespace

MainTermPoly main_term_coefficients(Series series, const ResidueOptions& opt) {
    auto main = fit_at_radius(series, opt.radius, opt);
    auto alt = fit_at_radius(series, opt.radius == 0.25 ? 1.0 / 3.0 : 0.25, opt);
    long double maxdiff = 0;
    for (int j = 0; j < 4; ++j)
        maxdiff = std::max(maxdiff,
                           std::abs(main[j] - alt[j]) / std::max(std::abs(main[j]), 1e-6L));
    MainTermPoly poly;
    poly.series = series;
    poly.a = double(main[0]);
    poly.b = double(main[1]);
    poly.c = double(main[2]);
    poly.d = double(main[3]);
    double digits = -std::log10(double(std::max(maxdiff, 1e-17L)));
    poly.digits_valid = unsigned(std::clamp(digits, 1.0, 17.0));
    return poly;
}

ScanRow error_term(uint64_t x, Series series) {
    if (x < 2) throw ValidationError("error_term: x >= 2 required");
    ScanRow row;
    row.x = x;
    row.sum = series == Series::d2 ? summatory_d2(x) : summatory_direct(x, SumKind::d_cube);
    row.main = residue_main_term(double(x), series);
    row.e = to_double(row.sum) - row.main;
    double lx = std::log(double(x));
    row.ratio = row.e / (std::sqrt(double(x)) * std::pow(lx, 5.0));
    return row;
}

std::vector<uint64_t> scan_grid(uint64_t x_from, uint64_t x_to, unsigned points) {
    if (!(x_from >= 10 && x_from < x_to)) throw ValidationError("scan: need 10 <= x_from < x_to");
    if (points < 2) throw ValidationError("scan: points >= 2 required");
    std::vector<uint64_t> grid(points);
    long double la = std::log((long double)x_from);
    long double lb = std::log((long double)x_to);
    for (unsigned i = 0; i < points; ++i) {
        long double t = la + (lb - la) * i / (points - 1);
        grid[i] = (uint64_t)llroundl(std::exp(t));
    }
    grid.front() = x_from;
    grid.back() = x_to;
    for (unsigned i = 1; i < points; ++i)
        if (grid[i] < grid[i - 1]) grid[i] = grid[i - 1];
    return grid;
}

namespace {

nlohmann::ordered_json row_to_json(const ScanRow& row) {
    nlohmann::ordered_json j;
    j["x"] = row.x;
    j["sum"] = to_string(row.sum);
    j["main"] = row.main;
    j["e"] = row.e;
    j["ratio"] = row.ratio;
    return j;
}

ScanRow row_from_json(const nlohmann::ordered_json& j) {
    ScanRow row;
    row.x = j.at("x").get<uint64_t>();
    row.sum = parse_int128(j.at("sum").get<std::string>());
    row.main = j.at("main").get<double>();
    row.e = j.at("e").get<double>();
    row.ratio = j.at("ratio").get<double>();
    return row;
}

}  // namespace

std::vector<ScanRow> scan_error_term(uint64_t x_from, uint64_t x_to, unsigned points, Series series,
                                     const std::string& checkpoint_path, unsigned threads) {
    std::vector<uint64_t> grid = scan_grid(x_from, x_to, points);
    std::vector<ScanRow> rows(points);
    std::size_t done = 0;

    if (!checkpoint_path.empty()) {
        std::ifstream in(checkpoint_path, std::ios::binary);
        if (in) {
            std::string content((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
            std::vector<std::string> lines;
            std::size_t start = 0;
            while (start < content.size()) {
                std::size_t nl = content.find('\n', start);
                if (nl == std::string::npos) break;  // torn final line: dropped
                lines.push_back(content.substr(start, nl - start));
                start = nl + 1;
            }
            if (lines.size() > grid.size())
                throw IntegrityError("checkpoint has more rows than the scan grid");
            for (std::size_t i = 0; i < lines.size(); ++i) {
                nlohmann::ordered_json j =
                    nlohmann::ordered_json::parse(lines[i], nullptr, false);
                if (j.is_discarded())
                    throw IntegrityError("checkpoint line " + std::to_string(i + 1) +
                                         " is not valid JSON");
                ScanRow row;
                try {
                    row = row_from_json(j);
                } catch (const std::exception& e) {
                    throw IntegrityError("checkpoint line " + std::to_string(i + 1) + ": " +
                                         e.what());
                }
                if (row.x != grid[i])
                    throw IntegrityError("checkpoint row " + std::to_string(i + 1) +
                                         " does not match the scan grid");
                rows[i] = row;
            }
            done = lines.size();
        }
    }

    int fd = -1;
    if (!checkpoint_path.empty()) {
        fd = ::open(checkpoint_path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
        if (fd < 0) throw ValidationError("cannot open checkpoint file: " + checkpoint_path);
        // a torn tail (if any) was dropped above; rewrite the kept prefix so
        // the file is whole lines only before appending resumes
        std::string kept;
        for (std::size_t i = 0; i < done; ++i) kept += row_to_json(rows[i]).dump() + "\n";
        if (::ftruncate(fd, 0) == 0 && !kept.empty()) {
            ssize_t written = ::write(fd, kept.data(), kept.size());
            (void)written;
        }
        ::fsync(fd);
    }

    while (done < rows.size()) {
        std::size_t batch = std::min<std::size_t>(rows.size() - done, std::max(1u, threads));
        parallel_for(batch, threads, [&](uint64_t i) {
            rows[done + i] = error_term(grid[done + i], series);
        });
        for (std::size_t i = 0; i < batch; ++i) {
            if (fd >= 0) {
                std::string line = row_to_json(rows[done + i]).dump() + "\n";
                ssize_t written = ::write(fd, line.data(), line.size());
                if (written != ssize_t(line.size())) {
                    ::close(fd);
                    throw ValidationError("checkpoint write failed");
                }
                ::fsync(fd);
            }
        }
        done += batch;
    }
    if (fd >= 0) ::close(fd);
    return rows;
}

}  // namespace mslab
