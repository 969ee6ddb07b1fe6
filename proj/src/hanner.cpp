#include "funkvol/hanner.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "funkvol/errors.hpp"
#include "funkvol/types.hpp"

namespace funkvol {

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail_at(const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s at position %zu in \"%s\"", what.c_str(), pos,
                  text.c_str());
    fail(Errc::ParseError, buf);
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail_at("expected a name");
    return text.substr(start, pos - start);
  }

  HannerSpec node() {
    std::string name = word();
    if (name == "segment") return HannerSpec{HannerSpec::Kind::segment, {}};
    if (name == "product" || name == "polar") {
      HannerSpec s;
      s.kind = name == "polar" ? HannerSpec::Kind::polar : HannerSpec::Kind::product;
      if (!eat('(')) fail_at("expected '(' after " + name);
      s.children.push_back(node());
      while (eat(',')) s.children.push_back(node());
      if (!eat(')')) fail_at("expected ')' or ','");
      if (s.kind == HannerSpec::Kind::polar && s.children.size() != 1)
        fail_at("polar takes exactly one argument");
      if (s.kind == HannerSpec::Kind::product && s.children.size() < 2)
        fail_at("product takes at least two arguments");
      return s;
    }
    pos -= name.size();
    fail_at("unknown name \"" + name + "\"");
  }
};

std::vector<Vec> build_vertices(const HannerSpec& spec) {
  switch (spec.kind) {
    case HannerSpec::Kind::segment: {
      Vec lo(1), hi(1);
      lo << -1.0;
      hi << 1.0;
      return {lo, hi};
    }
    case HannerSpec::Kind::polar: {
      Polytope body = hanner_build(spec.children[0]);
      return polar_dual(body, Vec::Zero(body.dim())).vertices();
    }
    case HannerSpec::Kind::product: {
      std::vector<Vec> acc = build_vertices(spec.children[0]);
      for (size_t c = 1; c < spec.children.size(); ++c) {
        std::vector<Vec> next = build_vertices(spec.children[c]);
        std::vector<Vec> prod;
        prod.reserve(acc.size() * next.size());
        for (const Vec& a : acc)
          for (const Vec& b : next) {
            Vec v(a.size() + b.size());
            v << a, b;
            prod.push_back(v);
          }
        acc = std::move(prod);
      }
      return acc;
    }
  }
  fail(Errc::ParseError, "corrupt spec node");
}

}  // namespace

int HannerSpec::dimension() const {
  if (kind == Kind::segment) return 1;
  if (kind == Kind::polar) return children[0].dimension();
  int d = 0;
  for (const HannerSpec& c : children) d += c.dimension();
  return d;
}

HannerSpec parse_hanner_spec(const std::string& text) {
  Parser p{text};
  HannerSpec s = p.node();
  p.skip_ws();
  if (p.pos != text.size()) p.fail_at("trailing input");
  return s;
}

Polytope hanner_build(const HannerSpec& spec) {
  int n = spec.dimension();
  if (n > 5) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "spec has dimension %d, face lattices are built up to 5", n);
    fail(Errc::DimensionTooLarge, buf);
  }
  return build_polytope(build_vertices(spec));
}

double hanner_ball_volume(int n, double R) {
  if (n < 1) fail(Errc::DegenerateInput, "dimension must be at least 1");
  if (R <= 0) fail(Errc::NonpositiveRadius, "ball radius must be positive");
  double side = R + std::log(2.0 - std::exp(-R));  // log(2 e^R - 1) without overflow
  double v = std::pow(2.0, n) * std::pow(side, n) / unit_ball_volume(n);
  for (int k = 2; k <= n; ++k) v /= k;
  return v;
}

}  // namespace funkvol
