#pragma once

#include <span>
#include <string>
#include <vector>

#include "coherence/corpus.hpp"

namespace coherence {

enum class RowUnit { Turn, DAUnit };
enum class CellVocab { Role, Presence, DA };

inline constexpr const char* kAbsentTag = "-";
inline constexpr const char* kPresenceTag = "X";
inline constexpr const char* kNoEntitiesColumn = "no_entities";
inline constexpr const char* kAllDAsColumn = "all_das";

struct GridSpec {
  RowUnit row_unit = RowUnit::Turn;
  CellVocab cell_vocab = CellVocab::Role;
  bool only_das = false;          // drop entity columns, keep one DA column
  std::string tagset_id;          // required when cell_vocab == DA
  bool operator==(const GridSpec&) const = default;
};

// S beats O beats X when an entity occurs several times in one row.
Role most_prominent_role(std::span<const Role> roles);
Role most_prominent_role(std::initializer_list<Role> roles);

struct Grid {
  GridSpec spec;
  std::vector<std::string> row_labels;  // "t1".. for turn rows, "da1".. for DA rows
  std::vector<std::string> columns;     // entity ids in first-appearance order,
                                        // then "no_entities" / single "all_das"
  std::vector<std::string> cells;       // row-major, rows() * cols() tags

  std::size_t rows() const { return row_labels.size(); }
  std::size_t cols() const { return columns.size(); }
  const std::string& cell(std::size_t r, std::size_t c) const {
    return cells[r * columns.size() + c];
  }
  std::string& cell(std::size_t r, std::size_t c) {
    return cells[r * columns.size() + c];
  }

  std::string to_text() const;  // aligned debug table
  std::string to_json() const;  // {"rows":..,"columns":..,"cells":..}
};

// Builds the grid for one dialogue. Throws ConfigError on an inconsistent
// spec (DA cells need DA-unit rows; only_das forces DA cells) and DataError
// when the spec's tagset does not match the dialogue's.
Grid build_grid(const Dialogue& d, const GridSpec& spec);

}  // namespace coherence
