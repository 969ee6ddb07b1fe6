#include "funkvol/quadrature.hpp"

namespace funkvol {

namespace {

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

GMRule grundmann_moeller(int n, int s) {
  if (n < 1 || s < 0) fail(Errc::DegenerateInput, "bad quadrature rule parameters");
  const int d = 2 * s + 1;
  GMRule rule;
  rule.n = n;
  rule.s = s;

  for (int i = 0; i <= s; ++i) {
    // (-1)^i 2^{-2s} (d+n-2i)^d / (i! (d+n-i)!), from the closed-form family of
    // odd-degree interior simplex rules.
    double coeff = std::pow(2.0, -2.0 * s) * std::pow(static_cast<double>(d + n - 2 * i), d) /
                   (factorial(i) * factorial(d + n - i));
    if (i % 2 == 1) coeff = -coeff;

    std::vector<std::vector<int>> beta;
    std::vector<int> cur;
    compositions(s - i, n + 1, cur, beta);
    const double denom = static_cast<double>(d + n - 2 * i);
    for (const auto& b : beta) {
      for (int j = 0; j <= n; ++j) rule.bary.push_back((2.0 * b[static_cast<size_t>(j)] + 1.0) / denom);
      rule.weight.push_back(coeff);
    }
  }
  rule.npts = static_cast<int>(rule.weight.size());

  // Raw weights integrate over the unit simplex (volume 1/n!); rescale so the
  // rule returns a weighted mean.
  const double nf = factorial(n);
  for (auto& w : rule.weight) w *= nf;
  return rule;
}

}  // namespace funkvol
