#include <cctype>
#include <regex>

#include "flatarc/exact_arith.hpp"

namespace flatarc {

namespace {

Integer floor_div(const Integer& n, const Integer& d) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

std::string strip_spaces(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  return s;
}

void require_unit_range(const QuadraticNumber& w) {
  if (w.sign() < 0 || compare(w, QuadraticNumber(1)) > 0)
    throw InvalidInput("slope " + w.str() + " outside [0,1]");
}

ContinuedFraction expand_rational(Rational x, std::size_t max_count) {
  ContinuedFraction cf;
  while (cf.quotients.size() < max_count) {
    Integer c = x.floor();
    cf.quotients.push_back(c);
    Rational rest = x - Rational(c);
    if (rest.sign() == 0) {
      cf.terminated = true;
      break;
    }
    x = Rational(1) / rest;
  }
  return cf;
}

// Expansion of (P + sqrt(D))/Q with D a positive non-square.
ContinuedFraction expand_quadratic(Integer P, Integer D, Integer Q, std::size_t max_count) {
  Integer aq = ::abs(Q);
  Integer diff = D - P * P;
  if (diff % Q != 0) {
    P *= aq;
    D *= aq * aq;
    Q *= aq;
  }
  Integer s = floor_sqrt(D);
  ContinuedFraction cf;
  while (cf.quotients.size() < max_count) {
    Integer c = Q > 0 ? floor_div(P + s, Q) : Integer(-floor_div(P + s, Integer(-Q)) - 1);
    cf.quotients.push_back(c);
    Integer P2 = c * Q - P;
    Integer Q2 = (D - P2 * P2) / Q;
    P = P2;
    Q = Q2;
  }
  return cf;
}

ContinuedFraction expand_interval(Rational lo, Rational hi, std::size_t max_count) {
  ContinuedFraction cf;
  while (cf.quotients.size() < max_count) {
    Integer c = lo.floor();
    // floor is certified only when both ends share it and the value cannot
    // be the integer c itself.
    if (hi.floor() != c || lo == Rational(c)) {
      cf.exhausted = true;
      break;
    }
    cf.quotients.push_back(c);
    Rational nlo = Rational(1) / (hi - Rational(c));
    Rational nhi = Rational(1) / (lo - Rational(c));
    lo = nlo;
    hi = nhi;
  }
  return cf;
}

}  // namespace

SlopeValue SlopeValue::from_rational(const Rational& w) {
  require_unit_range(QuadraticNumber(w));
  SlopeValue s;
  s.kind_ = Kind::rational;
  s.exact_ = QuadraticNumber(w);
  return s;
}

SlopeValue SlopeValue::from_quadratic(const QuadraticNumber& w) {
  if (w.is_rational()) return from_rational(w.as_rational());
  require_unit_range(w);
  SlopeValue s;
  s.kind_ = Kind::quadratic;
  s.exact_ = w;
  return s;
}

SlopeValue SlopeValue::from_quadratic(const Integer& p, const Integer& s, const Integer& d, const Integer& q) {
  require(q != 0, "zero denominator in quadratic slope");
  require(d >= 0, "negative radicand in quadratic slope");
  return from_quadratic(QuadraticNumber(Rational(p, q), Rational(s, q), d));
}

SlopeValue SlopeValue::from_decimal(std::string_view digits, int certified_digits) {
  require(certified_digits >= 1 && certified_digits <= 100000, "certified digits must be in [1, 100000]");
  std::string d = strip_spaces(digits);
  while (!d.empty() && d.back() == '.') d.pop_back();  // allow trailing "..."
  auto point = d.find('.');
  std::string whole = point == std::string::npos ? d : d.substr(0, point);
  std::string frac = point == std::string::npos ? "" : d.substr(point + 1);
  require(!whole.empty() && std::all_of(whole.begin(), whole.end(), ::isdigit) &&
              std::all_of(frac.begin(), frac.end(), ::isdigit),
          "malformed decimal slope '" + std::string(digits) + "'");
  auto n = static_cast<std::size_t>(certified_digits);
  if (frac.size() > n) frac.resize(n);
  frac.append(n - frac.size(), '0');
  Rational t = Rational::parse(whole + "." + frac);
  require(t.sign() >= 0 && t <= Rational(1), "decimal slope outside [0,1]");
  Integer ten = 10, scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(certified_digits));
  Rational eps(Integer(1), scale);
  SlopeValue s;
  s.kind_ = Kind::decimal;
  s.lo_ = t - eps;
  s.hi_ = t + eps;
  s.digits_ = Integer(whole).get_str() + "." + frac;
  s.certified_digits_ = certified_digits;
  return s;
}

SlopeValue SlopeValue::from_continued_fraction(const std::vector<Integer>& head, const std::vector<Integer>& period) {
  require(!head.empty() || !period.empty(), "empty continued fraction");
  for (std::size_t i = 0; i < head.size(); ++i)
    require(head[i] >= (i == 0 ? 0 : 1), "continued fraction terms must be positive");
  for (const auto& c : period) require(c >= 1, "periodic terms must be positive");
  if (period.empty()) {
    Rational x(head.back());
    for (std::size_t i = head.size() - 1; i-- > 0;) x = Rational(head[i]) + Rational(1) / x;
    return from_rational(x);
  }
  // y = [p1; ..., pm, y] solves Qm y^2 + (Q(m-1) - Pm) y - P(m-1) = 0.
  Integer p0 = 1, q0 = 0, p1 = period[0], q1 = 1;
  for (std::size_t i = 1; i < period.size(); ++i) {
    Integer p2 = period[i] * p1 + p0, q2 = period[i] * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  Integer b = q0 - p1;
  Integer disc = b * b + 4 * q1 * p0;
  QuadraticNumber y(Rational(Integer(-b), Integer(2 * q1)), Rational(Integer(1), Integer(2 * q1)), disc);
  // Fold the head: x = h0 + 1/(h1 + 1/(... + 1/y)).
  QuadraticNumber x = y;
  for (std::size_t i = head.size(); i-- > 0;) x = QuadraticNumber(Rational(head[i])) + QuadraticNumber(1) / x;
  if (head.empty()) x = y;
  return from_quadratic(x);
}

SlopeValue SlopeValue::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  auto colon = s.find(':');
  require(colon != std::string::npos, "slope must start with rat:, quad:, dec: or cf:");
  std::string kind = s.substr(0, colon), body = s.substr(colon + 1);
  if (kind == "rat") return from_rational(Rational::parse(body));
  if (kind == "quad") {
    static const std::regex re(R"(^\(([+-]?\d+)([+-])(?:(\d+)\*)?sqrt\((\d+)\)\)/([+-]?\d+)$)");
    std::smatch m;
    require(std::regex_match(body, m, re), "quadratic slope must look like quad:(p+s*sqrt(d))/q");
    Integer sc = m[3].matched ? parse_integer(m[3].str()) : Integer(1);
    if (m[2].str() == "-") sc = -sc;
    return from_quadratic(parse_integer(m[1].str()), sc, parse_integer(m[4].str()), parse_integer(m[5].str()));
  }
  if (kind == "dec") {
    auto at = body.find('@');
    require(at != std::string::npos, "decimal slope must end with @N (certified digits)");
    Integer n = parse_integer(body.substr(at + 1));
    require(n.fits_sint_p(), "certified digits out of range");
    return from_decimal(body.substr(0, at), static_cast<int>(n.get_si()));
  }
  if (kind == "cf") {
    require(body.size() >= 2 && body.front() == '[' && body.back() == ']',
            "continued fraction must look like cf:[a0;a1,a2,(p1,p2)]");
    std::string inner = body.substr(1, body.size() - 2);
    std::vector<Integer> head, period;
    auto paren = inner.find('(');
    std::string head_text = inner.substr(0, paren);
    if (paren != std::string::npos) {
      require(inner.back() == ')', "periodic part must close the expansion");
      std::string per = inner.substr(paren + 1, inner.size() - paren - 2);
      std::size_t start = 0;
      while (start <= per.size()) {
        auto comma = per.find(',', start);
        period.push_back(parse_integer(per.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    for (char& c : head_text)
      if (c == ';') c = ',';
    std::size_t start = 0;
    while (start < head_text.size()) {
      auto comma = head_text.find(',', start);
      std::string item = head_text.substr(start, comma - start);
      if (!item.empty()) head.push_back(parse_integer(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return from_continued_fraction(head, period);
  }
  throw InvalidInput("unknown slope kind '" + kind + "'");
}

std::string SlopeValue::str() const {
  switch (kind_) {
    case Kind::rational:
      return "rat:" + exact_.as_rational().str();
    case Kind::quadratic: {
      const Rational& u = exact_.rational_part();
      const Rational& v = exact_.root_coefficient();
      Integer L;
      mpz_lcm(L.get_mpz_t(), u.den().get_mpz_t(), v.den().get_mpz_t());
      Integer p = u.num() * (L / u.den());
      Integer s = v.num() * (L / v.den());
      std::string sign = s < 0 ? "-" : "+";
      return "quad:(" + p.get_str() + sign + Integer(::abs(s)).get_str() + "*sqrt(" + exact_.radicand().get_str() +
             "))/" + L.get_str();
    }
    case Kind::decimal:
      return "dec:" + digits_ + "@" + std::to_string(certified_digits_);
  }
  return {};
}

CertifiedReal SlopeValue::value() const {
  if (kind_ == Kind::decimal) return CertifiedReal::enclosure(lo_, hi_);
  return CertifiedReal(exact_);
}

CertifiedReal SlopeValue::times(const Integer& m) const {
  if (kind_ == Kind::decimal) {
    Rational a = lo_ * Rational(m), b = hi_ * Rational(m);
    return CertifiedReal::enclosure(min(a, b), max(a, b));
  }
  return CertifiedReal(exact_ * QuadraticNumber(Rational(m)));
}

const QuadraticNumber& SlopeValue::exact() const {
  if (kind_ == Kind::decimal)
    throw PrecisionExhausted("decimal slope has no exact value", certified_digits_);
  return exact_;
}

ContinuedFraction SlopeValue::partial_quotients(std::size_t max_count) const {
  switch (kind_) {
    case Kind::rational:
      return expand_rational(exact_.as_rational(), max_count);
    case Kind::quadratic: {
      const Rational& u = exact_.rational_part();
      const Rational& v = exact_.root_coefficient();
      Integer L;
      mpz_lcm(L.get_mpz_t(), u.den().get_mpz_t(), v.den().get_mpz_t());
      Integer A = u.num() * (L / u.den());
      Integer B = v.num() * (L / v.den());
      Integer D = B * B * exact_.radicand();
      if (B > 0) return expand_quadratic(A, D, L, max_count);
      return expand_quadratic(-A, D, -L, max_count);
    }
    case Kind::decimal:
      return expand_interval(lo_, hi_, max_count);
  }
  return {};
}

}  // namespace flatarc
