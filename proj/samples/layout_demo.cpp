// Builds a small ordinal panel, prints its minimum-crossing layout report,
// and writes an SVG bump chart into the working directory.
#include <fstream>
#include <iostream>
#include <sstream>

#include "panelcross/crossings.hpp"
#include "panelcross/io.hpp"
#include "panelcross/model.hpp"

int main() {
  std::istringstream csv(
      "subject,t0,t1,t2,t3\n"
      "ada,none,basics,basics,fluent\n"
      "ben,none,none,basics,basics\n"
      "cai,basics,none,basics,fluent\n"
      "dee,basics,fluent,fluent,fluent\n"
      "eli,fluent,fluent,basics,none\n");
  const panelcross::OpdInstance inst = panelcross::load_instance_csv(csv);

  const panelcross::CombinatorialLayout layout = panelcross::optimal_layout(inst);
  const panelcross::CrossingReport report = panelcross::count_layout_crossings(inst, layout);
  std::cout << "subjects: " << inst.n() << ", categories: " << inst.k()
            << ", timestamps: " << inst.m() + 1 << "\n";
  std::cout << "minimum crossings: " << report.total << " (strong " << report.strong
            << ", weak " << report.weak << ")\n";
  std::cout << "per interval:";
  for (long long c : report.per_interval) std::cout << " " << c;
  std::cout << "\n";

  panelcross::DrawingSpec spec;
  spec.smooth = true;
  std::ofstream svg("layout_demo.svg");
  svg << panelcross::render_svg(inst, layout, spec);
  std::cout << "wrote layout_demo.svg\n";
  return 0;
}
