#ifndef GABOR_CUBE_INDEXED_HPP
#define GABOR_CUBE_INDEXED_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "tolerance.hpp"

namespace gabor_cube {

/// Integer tuple used to index parameter tables, e.g. (k, m, n).
using IntKey = std::vector<std::int64_t>;

/// "[1,-2,0]"
inline std::string format_key(const IntKey& key) {
  std::string s = "[";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(key[i]);
  }
  return s + "]";
}

inline IntKey parse_key(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ConstructionError("malformed table key '" + text + "': expected \"[k,...]\"");
  }
  IntKey key;
  std::stringstream in(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      key.push_back(v);
    } catch (const std::exception&) {
      throw ConstructionError("malformed table key '" + text + "'");
    }
  }
  if (key.empty()) throw ConstructionError("empty table key '" + text + "'");
  return key;
}

/// floor-keys of a coordinate block (the integer cell containing the point).
inline IntKey cell_key(std::span<const double> coords, double eps = kIntegerTolerance) {
  IntKey key;
  key.reserve(coords.size());
  for (double c : coords) key.push_back(integer_part(c, eps));
  return key;
}

/// Finite table of reals indexed by integer tuples, with a default used
/// outside the table. Values are confined to [range_lo, range_hi).
class IndexedParam {
 public:
  IndexedParam() = default;
  explicit IndexedParam(std::size_t arity, double default_value = 0.0, double range_lo = 0.0,
                        double range_hi = 1.0)
      : arity_(arity), default_(default_value), range_lo_(range_lo), range_hi_(range_hi) {
    check_range(default_value, "default");
  }

  /// Unrestricted real-valued parameter.
  static IndexedParam real(std::size_t arity, double default_value = 0.0) {
    return IndexedParam(arity, default_value, -INFINITY, INFINITY);
  }

  IndexedParam& set(const IntKey& key, double value) {
    if (key.size() != arity_) {
      throw ConstructionError("table key " + format_key(key) + " has arity " +
                              std::to_string(key.size()) + ", expected " + std::to_string(arity_));
    }
    check_range(value, format_key(key));
    table_[key] = value;
    return *this;
  }

  double at(const IntKey& key) const {
    const auto it = table_.find(key);
    return it == table_.end() ? default_ : it->second;
  }

  std::size_t arity() const noexcept { return arity_; }
  double default_value() const noexcept { return default_; }
  double range_lo() const noexcept { return range_lo_; }
  double range_hi() const noexcept { return range_hi_; }
  const std::map<IntKey, double>& table() const noexcept { return table_; }

  /// Drops entries equal to the default.
  IndexedParam canonical() const {
    IndexedParam out(*this);
    std::erase_if(out.table_, [&](const auto& kv) { return kv.second == default_; });
    return out;
  }

  friend bool operator==(const IndexedParam&, const IndexedParam&) = default;

 private:
  void check_range(double v, const std::string& where) const {
    if (!std::isfinite(v) || v < range_lo_ || v >= range_hi_) {
      std::ostringstream msg;
      msg << "parameter " << where << " = " << v << " outside [" << range_lo_ << ", " << range_hi_
          << ")";
      throw ConstructionError(msg.str());
    }
  }

  std::size_t arity_ = 1;
  std::map<IntKey, double> table_;
  double default_ = 0.0;
  double range_lo_ = 0.0;
  double range_hi_ = 1.0;
};

/// Finite table of values keyed by integer tuples with an optional default.
template <class T>
class IndexedTable {
 public:
  IndexedTable() = default;
  explicit IndexedTable(std::optional<T> fallback) : default_(std::move(fallback)) {}

  IndexedTable& set(const IntKey& key, T value) {
    table_.insert_or_assign(key, std::move(value));
    return *this;
  }

  /// nullptr when the key is absent and there is no default.
  const T* find(const IntKey& key) const {
    const auto it = table_.find(key);
    if (it != table_.end()) return &it->second;
    return default_ ? &*default_ : nullptr;
  }

  const std::map<IntKey, T>& table() const noexcept { return table_; }
  std::map<IntKey, T>& table() noexcept { return table_; }
  const std::optional<T>& default_value() const noexcept { return default_; }
  void set_default(std::optional<T> v) { default_ = std::move(v); }

 private:
  std::map<IntKey, T> table_;
  std::optional<T> default_;
};

}  // namespace gabor_cube

#endif  // GABOR_CUBE_INDEXED_HPP
