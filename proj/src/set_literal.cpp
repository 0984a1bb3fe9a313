#include "fuglede/set_literal.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "fuglede/errors.hpp"

namespace fuglede {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void expect(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) {
      throw ParseError("expected '" + std::string(token) + "'", pos_);
    }
    pos_ += token.size();
  }

  std::uint64_t number() {
    std::uint64_t value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) throw ParseError("integer out of range", pos_);
    if (ec != std::errc() || ptr == first) throw ParseError("expected a non-negative integer", pos_);
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool done() const { return pos_ == text_.size(); }
  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

IndicatorMultiset parse_set_literal(std::string_view text) {
  Cursor cur(text);
  cur.expect("N=");
  const std::size_t modulus_pos = cur.position();
  const std::uint64_t n = cur.number();
  if (n == 0) throw ParseError("modulus must be positive", modulus_pos);
  if (n > (std::uint64_t{1} << 24)) throw ParseError("modulus too large", modulus_pos);
  cur.expect(";S=");
  if (cur.done()) throw ParseError("empty set", cur.position());
  std::vector<Element> elements;
  do {
    elements.push_back(cur.number() % n);
  } while (cur.consume(','));
  if (!cur.done()) throw ParseError("unexpected trailing input", cur.position());
  return IndicatorMultiset::from_elements(CyclicGroup(n), std::span<const Element>(elements));
}

std::string format_set_literal(const IndicatorMultiset& u) {
  std::ostringstream os;
  os << "N=" << u.modulus() << ";S=";
  bool first = true;
  for (Element x : u.elements()) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  return os.str();
}

}  // namespace fuglede
