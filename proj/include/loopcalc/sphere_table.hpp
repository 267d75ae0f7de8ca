#ifndef LOOPCALC_SPHERE_TABLE_HPP
#define LOOPCALC_SPHERE_TABLE_HPP

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "loopcalc/abelian.hpp"
#include "loopcalc/error.hpp"

namespace loopcalc {

// Homotopy groups of spheres pi_k(S^m) through the range k - m <= 7, covering
// every m >= 2: rows are stored for 2 <= m <= 9, and for m >= 10 a lookup is
// redirected into the stable row (the (s+2)-sphere is already stable for the
// s-stem by Freudenthal).  Everything outside the range is an explicit
// TableMiss, never a silent zero.
class SphereTable {
 public:
  struct Entry {
    FGAbelianGroup group;
    std::string provenance;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static constexpr int max_stem = 7;

  void insert(int m, int k, Entry e) {
    if (m < 2) throw ParseError("sphere table rows need m >= 2, got m = " +
                                std::to_string(m));
    if (k < m || k - m > max_stem)
      throw ParseError("sphere table rows need 0 <= k - m <= " +
                       std::to_string(max_stem) + ", got (m, k) = (" +
                       std::to_string(m) + ", " + std::to_string(k) + ")");
    auto [it, fresh] = entries_.try_emplace({m, k}, std::move(e));
    (void)it;
    if (!fresh)
      throw ParseError("duplicate sphere table entry for (m, k) = (" +
                       std::to_string(m) + ", " + std::to_string(k) + ")");
  }

  const std::map<std::pair<int, int>, Entry>& entries() const {
    return entries_;
  }

  bool has(int m, int k) const { return entries_.count({m, k}) > 0; }

  // pi_k(S^m) for m >= 1.  Throws TableMiss outside the tabulated range.
  Entry lookup(int m, int k) const {
    internal_check(m >= 1 && k >= 0, "sphere table: bad (m, k)");
    if (m == 1)
      return {k == 1 ? FGAbelianGroup::free_part(1) : FGAbelianGroup::zero(),
              "circle"};
    if (k < m) return {FGAbelianGroup::zero(), "connectivity"};
    int s = k - m;
    if (s > max_stem) throw miss(m, k);
    int mm = m, kk = k;
    if (m > 9) {
      // stable range: redirect to the first stable row for this stem
      mm = s + 2;
      kk = 2 * s + 2;
    }
    auto it = entries_.find({mm, kk});
    if (it == entries_.end()) throw miss(m, k);
    return it->second;
  }

  friend bool operator==(const SphereTable&, const SphereTable&) = default;

 private:
  static TableMiss miss(int m, int k) {
    return TableMiss("no table entry for pi_" + std::to_string(k) + "(S^" +
                     std::to_string(m) + ")");
  }

  std::map<std::pair<int, int>, Entry> entries_;
};

// File format, one entry per line, tab-separated:
//     m <TAB> k <TAB> group <TAB> provenance
// with group in the grammar 0 | Z | Z^r | Z/q | (Z/q)^e joined by '+'.
// Blank lines and lines starting with '#' are skipped.  Anything else is
// rejected with its line number.
inline SphereTable parse_sphere_table(std::istream& in,
                                      const std::string& source) {
  SphereTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = detail::strip_ws(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      auto tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string::npos
                                            ? std::string::npos
                                            : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    auto fail = [&](const std::string& why) -> ParseError {
      return ParseError(source + ":" + std::to_string(lineno) + ": " + why);
    };
    if (fields.size() != 4)
      throw fail("expected 4 tab-separated fields (m, k, group, provenance), "
                 "got " + std::to_string(fields.size()));
    try {
      int m = static_cast<int>(
          detail::parse_positive_int(detail::strip_ws(fields[0]), "m"));
      int k = static_cast<int>(
          detail::parse_positive_int(detail::strip_ws(fields[1]), "k"));
      std::string prov = detail::strip_ws(fields[3]);
      if (prov.empty()) throw ParseError("empty provenance field");
      table.insert(m, k, {parse_group(fields[2]), prov});
    } catch (const ParseError& e) {
      throw fail(e.what());
    }
  }
  return table;
}

inline SphereTable load_sphere_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sphere table file: " + path);
  return parse_sphere_table(in, path);
}

// The classical table rows: the s-stem stabilizes at m = s + 2, and the
// unstable corner (2 <= m <= 9) is filled in from the standard references.
inline const SphereTable& builtin_sphere_table() {
  static const SphereTable table = [] {
    static const char* data = R"(
# pi_k(S^m) for 2 <= m <= 9, 0 <= k-m <= 7
2	2	Z	degree
2	3	Z	Hopf fibration
2	4	Z/2	Toda table
2	5	Z/2	Toda table
2	6	Z/12	Toda table
2	7	Z/2	Toda table
2	8	Z/2	Toda table
2	9	Z/3	Toda table
3	3	Z	degree
3	4	Z/2	stable 1-stem
3	5	Z/2	Toda table
3	6	Z/12	Toda table
3	7	Z/2	Toda table
3	8	Z/2	Toda table
3	9	Z/3	Toda table
3	10	Z/15	Toda table
4	4	Z	degree
4	5	Z/2	stable 1-stem
4	6	Z/2	stable 2-stem
4	7	Z + Z/12	Hopf fibration + Toda table
4	8	(Z/2)^2	Toda table
4	9	(Z/2)^2	Toda table
4	10	Z/24 + Z/3	Toda table
4	11	Z/15	Toda table
5	5	Z	degree
5	6	Z/2	stable 1-stem
5	7	Z/2	stable 2-stem
5	8	Z/24	stable 3-stem
5	9	Z/2	Toda table
5	10	Z/2	Toda table
5	11	Z/2	Toda table
5	12	Z/30	Toda table
6	6	Z	degree
6	7	Z/2	stable 1-stem
6	8	Z/2	stable 2-stem
6	9	Z/24	stable 3-stem
6	10	0	stable 4-stem
6	11	Z	Toda table
6	12	Z/2	Toda table
6	13	Z/60	Toda table
7	7	Z	degree
7	8	Z/2	stable 1-stem
7	9	Z/2	stable 2-stem
7	10	Z/24	stable 3-stem
7	11	0	stable 4-stem
7	12	0	stable 5-stem
7	13	Z/2	Toda table
7	14	Z/120	Toda table
8	8	Z	degree
8	9	Z/2	stable 1-stem
8	10	Z/2	stable 2-stem
8	11	Z/24	stable 3-stem
8	12	0	stable 4-stem
8	13	0	stable 5-stem
8	14	Z/2	stable 6-stem
8	15	Z + Z/120	Hopf fibration + Toda table
9	9	Z	degree
9	10	Z/2	stable 1-stem
9	11	Z/2	stable 2-stem
9	12	Z/24	stable 3-stem
9	13	0	stable 4-stem
9	14	0	stable 5-stem
9	15	Z/2	stable 6-stem
9	16	Z/240	stable 7-stem
)";
    std::istringstream in(data);
    return parse_sphere_table(in, "<builtin>");
  }();
  return table;
}

}  // namespace loopcalc

#endif  // LOOPCALC_SPHERE_TABLE_HPP
