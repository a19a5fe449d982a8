#pragma once

#include <string>

#include "tilt/qp.hpp"

namespace tilt {

/// Line-oriented algebra description: field, quiver, optional relations,
/// optional potential with cut, optional n. Vertices carry the labels used
/// in the file; internally everything is 0-based in declaration order.
struct AlgebraFile {
  Presentation pres;
  std::vector<long> vertex_labels;
  bool has_potential = false;
  Potential potential{rationals()};
  bool has_cut = false;
  std::vector<bool> cut;
  bool has_n = false;
  std::size_t n = 1;

  std::size_t vertex_of_label(long label) const;
  long label_of(std::size_t v) const { return vertex_labels[v]; }
};

AlgebraFile parse_algebra_file(const std::string& text);
AlgebraFile load_algebra_file(const std::string& path);
std::string print_algebra_file(const AlgebraFile& f);

/// The presentation the file denotes: the truncated Jacobian algebra when a
/// potential and cut are present, otherwise the quiver with its relations.
Presentation presented_algebra(const AlgebraFile& f);

/// Sorted arrow list "name: src -> tgt", one per line, with vertex labels
/// (1-based positions when labels is empty).
std::string quiver_diagram(const Quiver& q, const std::vector<long>& labels = {});

}  // namespace tilt
