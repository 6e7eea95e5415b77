#include "pgonal/nec.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "pgonal/arith.hpp"
#include "pgonal/errors.hpp"

namespace pgonal
{

std::vector<std::int64_t> NecSignature::sorted_periods() const
{
  auto sorted = proper_periods;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

bool operator==(NecSignature const &lhs, NecSignature const &rhs)
{
  if (lhs.genus != rhs.genus || lhs.orientable != rhs.orientable)
    return false;

  if (lhs.sorted_periods() != rhs.sorted_periods())
    return false;

  auto lhs_cycles = lhs.period_cycles;
  auto rhs_cycles = rhs.period_cycles;
  std::sort(lhs_cycles.begin(), lhs_cycles.end());
  std::sort(rhs_cycles.begin(), rhs_cycles.end());
  return lhs_cycles == rhs_cycles;
}

std::vector<std::string> validate(NecSignature const &sig)
{
  std::vector<std::string> violations;

  if (sig.genus < 0)
    violations.emplace_back("genus < 0");

  if (!sig.orientable && sig.genus < 1)
    violations.emplace_back("sign - needs genus >= 1");

  if (std::any_of(sig.proper_periods.begin(), sig.proper_periods.end(),
                  [](std::int64_t m) { return m < 2; }))
    violations.emplace_back("period < 2");

  for (auto const &cycle : sig.period_cycles) {
    if (std::any_of(cycle.begin(), cycle.end(), [](std::int64_t m) { return m < 2; })) {
      violations.emplace_back("link period < 2");
      break;
    }
  }

  return violations;
}

bool is_valid(NecSignature const &sig)
{ return validate(sig).empty(); }

namespace
{

void require_valid(NecSignature const &sig)
{
  auto const violations = validate(sig);
  if (!violations.empty())
    throw InvalidSignature("invalid signature " + to_string(sig) + ": " + violations.front());
}

} // anonymous namespace

Rational normalized_area(NecSignature const &sig)
{
  require_valid(sig);

  std::int64_t const epsilon = sig.orientable ? 2 : 1;
  auto const k = static_cast<std::int64_t>(sig.period_cycles.size());

  Rational area = make_rational(epsilon * sig.genus - 2 + k);

  for (std::int64_t m : sig.proper_periods)
    area += 1 - make_rational(1, m);

  Rational links = 0;
  for (auto const &cycle : sig.period_cycles) {
    for (std::int64_t m : cycle)
      links += 1 - make_rational(1, m);
  }
  area += links / 2;

  return area;
}

std::optional<std::int64_t> genus_of_surface_kernel(NecSignature const &sig,
                                                    std::int64_t group_order)
{
  if (group_order < 1)
    throw InvalidParameters("group order must be >= 1");

  Rational const area = normalized_area(sig);
  if (area <= 0)
    throw DegenerateSignature("signature " + to_string(sig) + " has area " + to_string(area));

  auto const genus = as_int64(1 + make_rational(group_order) * area / 2);
  if (!genus || *genus < 2)
    return std::nullopt;

  return genus;
}

NecSignature canonical_fuchsian(NecSignature const &sig)
{
  require_valid(sig);

  if (sig.orientable || !sig.period_cycles.empty() || sig.genus < 1)
    throw InvalidSignature("canonical Fuchsian subgroup needs a signature (h;-;[...]) "
                           "with h >= 1 and no period cycles, got " + to_string(sig));

  NecSignature result{sig.genus - 1, true, {}, {}};
  for (std::int64_t m : sig.proper_periods) {
    result.proper_periods.push_back(m);
    result.proper_periods.push_back(m);
  }
  return result;
}

std::string to_string(Family family)
{ return family == Family::i ? "i" : "ii"; }

Family parse_family(std::string_view text)
{
  if (text == "i")
    return Family::i;
  if (text == "ii")
    return Family::ii;
  throw ParseError("unknown signature family '" + std::string(text) + "'");
}

Rational family_l(std::int64_t p, std::int64_t n, std::int64_t g, Family family)
{
  if (!is_odd_prime(p))
    throw InvalidParameters("p = " + std::to_string(p) + " is not an odd prime");
  if (n < 2 || n % 2 != 0)
    throw InvalidParameters("n = " + std::to_string(n) + " must be a positive even integer");

  std::int64_t const numerator = family == Family::i ? 2 * (g + p - 1) : 2 * g;
  return make_rational(numerator, n * (p - 1));
}

std::optional<FamilySignature> family_signature(std::int64_t p, std::int64_t n,
                                                std::int64_t g, Family family)
{
  auto const l = as_int64(family_l(p, n, g, family));
  if (!l || *l < 1)
    return std::nullopt;

  std::int64_t const last = family == Family::i ? n / 2 : n * p / 2;
  if (last < 2)
    return std::nullopt;

  NecSignature sig{1, false, std::vector<std::int64_t>(static_cast<std::size_t>(*l), p), {}};
  sig.proper_periods.push_back(last);

  return FamilySignature{std::move(sig), family, *l};
}

std::string to_string(NecSignature const &sig)
{
  std::ostringstream out;
  out << '(' << sig.genus << ';' << (sig.orientable ? '+' : '-') << ";[";

  for (std::size_t i = 0; i < sig.proper_periods.size(); ++i)
    out << (i ? "," : "") << sig.proper_periods[i];
  out << ']';

  if (!sig.period_cycles.empty()) {
    out << ";{";
    for (std::size_t i = 0; i < sig.period_cycles.size(); ++i) {
      out << (i ? ",(" : "(");
      auto const &cycle = sig.period_cycles[i];
      for (std::size_t j = 0; j < cycle.size(); ++j)
        out << (j ? "," : "") << cycle[j];
      out << ')';
    }
    out << '}';
  }

  out << ')';
  return out.str();
}

namespace
{

class SignatureParser
{
public:
  explicit SignatureParser(std::string_view text)
  : _text(text)
  {}

  NecSignature parse()
  {
    NecSignature sig;

    expect('(');
    sig.genus = integer();
    expect(';');
    sig.orientable = sign();
    expect(';');
    sig.proper_periods = integer_list('[', ']');

    if (accept(';')) {
      expect('{');
      if (!accept('}')) {
        do {
          sig.period_cycles.push_back(integer_list('(', ')'));
        } while (accept(','));
        expect('}');
      }
    }

    expect(')');
    skip_space();
    if (_pos != _text.size())
      fail("trailing characters");

    return sig;
  }

private:
  [[noreturn]] void fail(std::string const &what) const
  {
    throw ParseError("cannot parse signature '" + std::string(_text) + "' at offset " +
                     std::to_string(_pos) + ": " + what);
  }

  void skip_space()
  {
    while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
      ++_pos;
  }

  bool accept(char c)
  {
    skip_space();
    if (_pos < _text.size() && _text[_pos] == c) {
      ++_pos;
      return true;
    }
    return false;
  }

  void expect(char c)
  {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  bool sign()
  {
    skip_space();
    if (accept('+'))
      return true;
    if (accept('-'))
      return false;
    // U+2212 MINUS SIGN
    if (_text.substr(_pos, 3) == "\xE2\x88\x92") {
      _pos += 3;
      return false;
    }
    fail("expected sign '+' or '-'");
  }

  std::int64_t integer()
  {
    skip_space();
    std::size_t const start = _pos;
    if (_pos < _text.size() && _text[_pos] == '-')
      ++_pos;
    while (_pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos])))
      ++_pos;

    std::string const digits(_text.substr(start, _pos - start));
    if (digits.empty() || digits == "-")
      fail("expected integer");
    if (digits.size() > 18)
      fail("integer out of range");

    return std::stoll(digits);
  }

  std::vector<std::int64_t> integer_list(char open, char close)
  {
    std::vector<std::int64_t> values;
    expect(open);
    if (accept(close))
      return values;

    do {
      values.push_back(integer());
    } while (accept(','));

    expect(close);
    return values;
  }

  std::string_view _text;
  std::size_t _pos = 0;
};

} // anonymous namespace

NecSignature parse_signature(std::string_view text)
{ return SignatureParser(text).parse(); }

} // namespace pgonal
