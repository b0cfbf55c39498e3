#include "evssta/corrections.hpp"

namespace evssta::corrections::ref {

CorrelationSum correlation_sum(const EpsilonMatrix& eps) {
    double s = 0.0;
    for (std::size_t i = 0; i < eps.n(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < eps.n(); ++j) {
            if (i != j) {
                row += eps(i, j);
            }
        }
        s += row;
    }
    return {s};
}

GridEvaluation evaluate_grid(std::span<const double> z, const GumbelParams& p, CorrelationSum s,
                             Order order) {
    GridEvaluation out;
    out.z.assign(z.begin(), z.end());
    out.cdf.reserve(z.size());
    out.pdf.reserve(z.size());
    for (double zk : z) {
        out.cdf.push_back(corrected_cdf(zk, p, s, order));
        out.pdf.push_back(corrected_pdf(zk, p, s, order));
    }
    return out;
}

}  // namespace evssta::corrections::ref
