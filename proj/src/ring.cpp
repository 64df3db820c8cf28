#include "hfk/ring.hpp"

namespace hfk {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Ring Ring::parse(const std::string& s) {
  if (s == "z" || s == "Z") return Ring{0};
  if (s == "f2" || s == "F2") return Ring{2};
  if (s.rfind("fp:", 0) == 0) {
    std::size_t used = 0;
    long p = 0;
    try {
      p = std::stol(s.substr(3), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad prime in ring '" + s + "'");
    }
    if (used != s.size() - 3 || !is_prime(p) || p >= 65536)
      throw std::invalid_argument("ring '" + s + "' needs a prime below 65536");
    return Ring{static_cast<int>(p)};
  }
  throw std::invalid_argument("unknown ring '" + s + "' (expected f2, fp:<p> or z)");
}

}  // namespace hfk
