#include "apartness_lab/poset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace apartness_lab {

namespace {

std::uint32_t bit(std::size_t i) { return std::uint32_t{1} << i; }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Poset::Poset(std::vector<std::uint32_t> up) : up_(std::move(up)), down_(up_.size(), 0) {
  for (std::size_t i = 0; i < up_.size(); ++i) {
    for (std::size_t j = 0; j < up_.size(); ++j) {
      if (leq(i, j)) down_[j] |= bit(i);
    }
  }
}

Poset Poset::from_up_masks(std::vector<std::uint32_t> up) {
  const std::size_t n = up.size();
  if (n > kMaxSize) throw std::invalid_argument("poset too large");
  for (std::size_t i = 0; i < n; ++i) {
    if (n < 32 && (up[i] >> n) != 0) throw std::invalid_argument("poset mask out of range");
    if (!(up[i] & bit(i))) throw std::invalid_argument("poset relation is not reflexive");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && (up[i] & bit(j)) && (up[j] & bit(i))) {
        throw std::invalid_argument("poset relation is not antisymmetric (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
      }
      if ((up[i] & bit(j)) && (up[j] & ~up[i])) {
        throw std::invalid_argument("poset relation is not transitive");
      }
    }
  }
  return Poset(std::move(up));
}

Poset Poset::from_relation(std::size_t size, const std::vector<std::pair<int, int>>& less_than) {
  if (size > kMaxSize) throw std::invalid_argument("poset too large");
  std::vector<std::uint32_t> up(size);
  for (std::size_t i = 0; i < size; ++i) up[i] = bit(i);
  for (auto [a, b] : less_than) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= size ||
        static_cast<std::size_t>(b) >= size) {
      throw std::invalid_argument("poset element out of range in " + std::to_string(a) + " < " +
                                  std::to_string(b));
    }
    up[a] |= bit(b);
  }
  // Warshall closure on bitmasks.
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t i = 0; i < size; ++i) {
      if (up[i] & bit(k)) up[i] |= up[k];
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      if ((up[i] & bit(j)) && (up[j] & bit(i))) {
        throw std::invalid_argument("relation has a cycle through " + std::to_string(i) + " and " +
                                    std::to_string(j));
      }
    }
  }
  return Poset(std::move(up));
}

std::vector<std::pair<int, int>> Poset::covers() const {
  std::vector<std::pair<int, int>> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq(i, j)) continue;
      // Strictly between i and j.
      std::uint32_t between = (up_[i] & down_[j]) & ~bit(i) & ~bit(j);
      if (between == 0) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

Poset Poset::dual() const { return Poset(down_); }

Poset Poset::permuted(const std::vector<int>& perm) const {
  const std::size_t n = size();
  std::vector<std::uint32_t> up(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (leq(i, j)) up[perm[i]] |= bit(perm[j]);
    }
  }
  return Poset(std::move(up));
}

std::uint64_t Poset::code_under(const std::vector<int>& perm) const {
  const std::size_t n = size();
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq(i, j)) code |= std::uint64_t{1} << (perm[i] * n + perm[j]);
    }
  }
  return code;
}

std::uint64_t Poset::canonical_code() const {
  if (size() > 8) throw std::invalid_argument("canonical_code supports at most 8 elements");
  std::vector<int> perm(size());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, code_under(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return size() == 0 ? 0 : best;
}

Poset Poset::canonical_form() const {
  if (size() > 8) throw std::invalid_argument("canonical_form supports at most 8 elements");
  std::vector<int> perm(size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = code_under(perm);
    if (code < best) {
      best = code;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return permuted(best_perm);
}

bool Poset::is_rooted() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::popcount(up_[i]) == static_cast<int>(size())) return true;
  }
  return false;
}

const std::vector<Poset>& posets_of_size(std::size_t size) {
  constexpr std::size_t kMaxEnumerated = 7;
  if (size > kMaxEnumerated) throw std::invalid_argument("poset enumeration supports sizes <= 7");
  static std::array<std::vector<Poset>, kMaxEnumerated + 1> cache;
  static std::array<std::once_flag, kMaxEnumerated + 1> once;
  std::call_once(once[size], [size] {
    // Every poset has a linear extension, so it suffices to try relations that only
    // relate i < j as integers.
    std::vector<std::pair<int, int>> slots;
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) slots.emplace_back(i, j);
    }
    std::map<std::uint64_t, Poset> classes;
    const std::uint64_t combos = std::uint64_t{1} << slots.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      std::vector<std::uint32_t> up(size);
      for (std::size_t i = 0; i < size; ++i) up[i] = bit(i);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (mask >> s & 1) up[slots[s].first] |= bit(slots[s].second);
      }
      bool transitive = true;
      for (std::size_t i = 0; i < size && transitive; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
          if (i != j && (up[i] & bit(j)) && (up[j] & ~up[i])) {
            transitive = false;
            break;
          }
        }
      }
      if (!transitive) continue;
      Poset candidate = Poset::from_up_masks(std::move(up));
      std::uint64_t code = candidate.canonical_code();
      if (!classes.count(code)) classes.emplace(code, candidate.canonical_form());
    }
    for (auto& [code, poset] : classes) cache[size].push_back(std::move(poset));
  });
  return cache[size];
}

Poset parse_poset(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<std::size_t> size;
  std::vector<std::pair<int, int>> pairs;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("poset line " + std::to_string(line_no) + ": " + why);
    };
    if (!size) {
      constexpr std::string_view kHeader = "elements:";
      if (body.rfind(kHeader, 0) != 0) fail("expected 'elements: n'");
      std::istringstream num(body.substr(kHeader.size()));
      long n = -1;
      if (!(num >> n) || n < 0 || static_cast<std::size_t>(n) > Poset::kMaxSize) {
        fail("bad element count");
      }
      std::string rest;
      if (num >> rest) fail("trailing text after element count");
      size = static_cast<std::size_t>(n);
      continue;
    }
    std::istringstream rel(body);
    int a = -1, b = -1;
    char lt = 0;
    std::string rest;
    if (!(rel >> a >> lt >> b) || lt != '<' || (rel >> rest)) fail("expected 'i < j'");
    pairs.emplace_back(a, b);
  }
  if (!size) throw std::invalid_argument("poset text is missing 'elements: n'");
  return Poset::from_relation(*size, pairs);
}

Poset read_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open poset file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_poset(buf.str());
}

std::string format_poset(const Poset& poset) {
  std::ostringstream out;
  out << "elements: " << poset.size() << '\n';
  for (auto [i, j] : poset.covers()) out << i << " < " << j << '\n';
  return out.str();
}

}  // namespace apartness_lab
