// Finds the category ordering that minimizes forced crossings, first for a
// two-test panel and then for a bipartite drawing posed via the reduction.
#include <iostream>
#include <sstream>

#include "panelcross/io.hpp"
#include "panelcross/sigma.hpp"

namespace {

void report(const panelcross::OpdInstance& inst, const char* what) {
  const panelcross::SigmaSearchResult best = panelcross::optimal_sigma_exact(inst);
  std::cout << what << ": ";
  const std::vector<int> order = best.sigma.order();
  for (std::size_t i = 0; i < order.size(); ++i)
    std::cout << (i ? " < " : "") << inst.categories.labels[order[i]];
  std::cout << "  (forced crossings " << best.objective << ")\n";
}

}  // namespace

int main() {
  std::istringstream csv(
      "subject,before,after\n"
      "s1,low,high\n"
      "s2,mid,mid\n"
      "s3,high,low\n"
      "s4,low,mid\n");
  const panelcross::OpdInstance panel = panelcross::load_instance_csv(csv);
  report(panel, "panel ordering");

  const std::vector<std::string> plugs = {"p1", "p2"};
  const std::vector<std::string> sockets = {"s1", "s2"};
  const std::vector<std::pair<std::string, std::string>> cables = {
      {"p1", "s1"}, {"p1", "s2"}, {"p2", "s1"}, {"p2", "s2"}};
  const panelcross::OpdInstance wiring = panelcross::bipartite_reduction(plugs, sockets, cables);
  report(wiring, "two-layer wiring");

  const panelcross::ResponsibilityTables tables = panelcross::compute_tables(panel);
  std::cout << "integer program for the panel:\n" << panelcross::export_ilp(tables, panel.k());
  return 0;
}
