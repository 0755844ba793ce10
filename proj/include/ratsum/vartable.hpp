#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qfield.hpp"

namespace ratsum {

enum class VarKind { shift, qshift, inert };

// Ordered variable list with operator tags and the coefficient field. Shared
// immutably by every polynomial of a problem instance; the monomial order is
// graded lexicographic over this variable order.
struct VarTable {
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  CoeffField field;

  size_t size() const { return names.size(); }

  int index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool is_active(size_t i) const { return kinds[i] != VarKind::inert; }

  static std::shared_ptr<const VarTable> make(std::vector<std::string> names,
                                              std::vector<VarKind> kinds,
                                              CoeffField field) {
    if (names.size() != kinds.size()) throw error("variable table mismatch");
    auto t = std::make_shared<VarTable>();
    t->names = std::move(names);
    t->kinds = std::move(kinds);
    t->field = std::move(field);
    return t;
  }

  // A copy of this table with extra variables appended.
  std::shared_ptr<const VarTable> extended(
      const std::vector<std::string>& extra_names,
      const std::vector<VarKind>& extra_kinds) const {
    auto t = std::make_shared<VarTable>(*this);
    t->names.insert(t->names.end(), extra_names.begin(), extra_names.end());
    t->kinds.insert(t->kinds.end(), extra_kinds.begin(), extra_kinds.end());
    return t;
  }
};

using TablePtr = std::shared_ptr<const VarTable>;

// Integer exponent word over the table's variables; entries on inert
// variables must stay zero.
using GroupWord = std::vector<long>;

inline GroupWord word_unit(size_t n, size_t i, long e) {
  GroupWord w(n, 0);
  w[i] = e;
  return w;
}

inline GroupWord word_add(const GroupWord& a, const GroupWord& b) {
  GroupWord r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline GroupWord word_neg(const GroupWord& a) {
  GroupWord r(a);
  for (auto& x : r) x = -x;
  return r;
}

inline bool word_is_zero(const GroupWord& a) {
  for (long x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace ratsum
