#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphere {

struct GalleryMap {
  std::string name;
  std::string spec;
};

/// Built-in maps exercised by the acceptance run.
const std::vector<GalleryMap>& gallery_maps();

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  /// Informational lines are printed but never gate the run.
  bool informational = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance();

/// One line per criterion; returns true when every gating criterion passed.
bool print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace sphere
