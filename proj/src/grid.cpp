#include "coherence/grid.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace coherence {

Role most_prominent_role(std::span<const Role> roles) {
  if (roles.empty())
    throw std::invalid_argument("most_prominent_role: empty role set");
  bool has_object = false;
  for (Role r : roles) {
    if (r == Role::Subject) return Role::Subject;
    if (r == Role::Object) has_object = true;
  }
  return has_object ? Role::Object : Role::Other;
}

Role most_prominent_role(std::initializer_list<Role> roles) {
  return most_prominent_role(std::span<const Role>(roles.begin(), roles.size()));
}

namespace {

void check_spec(const Dialogue& d, const GridSpec& spec) {
  if (spec.only_das &&
      (spec.row_unit != RowUnit::DAUnit || spec.cell_vocab != CellVocab::DA))
    throw ConfigError("only_das grids require DA-unit rows and DA cells");
  if (spec.cell_vocab == CellVocab::DA && spec.row_unit != RowUnit::DAUnit)
    throw ConfigError("DA cells are only defined for DA-unit rows (a turn can span several tags)");
  if (spec.cell_vocab == CellVocab::DA) {
    if (spec.tagset_id.empty())
      throw ConfigError("DA-cell grids need a tagset_id in the spec");
    if (spec.tagset_id != d.tagset_id)
      throw DataError("grid spec tagset '" + spec.tagset_id + "' does not match dialogue tagset '" +
                      d.tagset_id + "'");
  }
}

}  // namespace

Grid build_grid(const Dialogue& d, const GridSpec& spec) {
  check_spec(d, spec);

  Grid g;
  g.spec = spec;

  // Rows: either whole turns (units pooled) or individual DA units.
  std::vector<std::vector<const DAUnit*>> row_units;
  if (spec.row_unit == RowUnit::Turn) {
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      std::vector<const DAUnit*> span;
      for (const DAUnit& u : d.turns[t].units) span.push_back(&u);
      row_units.push_back(std::move(span));
      g.row_labels.push_back("t" + std::to_string(t + 1));
    }
  } else {
    std::size_t i = 0;
    for (const Turn& t : d.turns)
      for (const DAUnit& u : t.units) {
        row_units.push_back({&u});
        g.row_labels.push_back("da" + std::to_string(++i));
      }
  }

  if (spec.only_das) {
    g.columns = {kAllDAsColumn};
    for (const auto& span : row_units) g.cells.push_back(span.front()->da_tag);
    return g;
  }

  // Entity columns in first-appearance order.
  std::unordered_map<std::string, std::size_t> col_of;
  for (const Turn& t : d.turns)
    for (const DAUnit& u : t.units)
      for (const EntityMention& m : u.mentions)
        if (col_of.emplace(m.entity_id, g.columns.size()).second)
          g.columns.push_back(m.entity_id);

  const bool da_cells = spec.cell_vocab == CellVocab::DA;
  if (da_cells) g.columns.push_back(kNoEntitiesColumn);

  g.cells.assign(row_units.size() * g.columns.size(), kAbsentTag);

  for (std::size_t r = 0; r < row_units.size(); ++r) {
    if (da_cells) {
      const std::string& tag = row_units[r].front()->da_tag;
      bool any_mention = false;
      for (const DAUnit* u : row_units[r])
        for (const EntityMention& m : u->mentions) {
          any_mention = true;
          g.cell(r, col_of.at(m.entity_id)) = tag;
        }
      if (!any_mention) g.cell(r, g.columns.size() - 1) = tag;
      continue;
    }
    // role / presence cells: pool roles per entity across the row span
    std::unordered_map<std::string, Role> best;
    for (const DAUnit* u : row_units[r])
      for (const EntityMention& m : u->mentions) {
        auto [it, inserted] = best.emplace(m.entity_id, m.role);
        if (!inserted)
          it->second = most_prominent_role({it->second, m.role});
      }
    for (const auto& [entity, role] : best) {
      g.cell(r, col_of.at(entity)) =
          spec.cell_vocab == CellVocab::Role ? std::string(1, role_letter(role))
                                             : std::string(kPresenceTag);
    }
  }
  return g;
}

std::string Grid::to_text() const {
  std::vector<std::size_t> widths(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    widths[c] = columns[c].size();
    for (std::size_t r = 0; r < rows(); ++r)
      widths[c] = std::max(widths[c], cell(r, c).size());
  }
  std::size_t label_w = 0;
  for (const auto& l : row_labels) label_w = std::max(label_w, l.size());

  std::ostringstream os;
  os << std::string(label_w, ' ');
  for (std::size_t c = 0; c < columns.size(); ++c)
    os << "  " << columns[c] << std::string(widths[c] - columns[c].size(), ' ');
  os << '\n';
  for (std::size_t r = 0; r < rows(); ++r) {
    os << row_labels[r] << std::string(label_w - row_labels[r].size(), ' ');
    for (std::size_t c = 0; c < columns.size(); ++c)
      os << "  " << cell(r, c) << std::string(widths[c] - cell(r, c).size(), ' ');
    os << '\n';
  }
  return os.str();
}

std::string Grid::to_json() const {
  nlohmann::ordered_json j;
  j["rows"] = row_labels;
  j["columns"] = columns;
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < cols(); ++c) row.push_back(cell(r, c));
    rows_json.push_back(std::move(row));
  }
  j["cells"] = std::move(rows_json);
  return j.dump();
}

}  // namespace coherence
