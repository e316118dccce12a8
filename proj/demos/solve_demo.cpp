// Builds a small instance in code, solves it with every method and prints
// the orders, then writes the diagram of the best order to demo.svg.

#include <fstream>
#include <iostream>

#include "tsd/tsd.hpp"

int main() {
  tsd::EventGraphBuilder b;
  b.add_train(1, {{"Aachen", 0}, {"Bonn", 10}, {"Koeln", 20}, {"Duesseldorf", 30}});
  b.add_train(2, {{"Koeln", 5}, {"Aachen", 15}, {"Bonn", 25}});
  b.add_train(3, {{"Duesseldorf", 2}, {"Koeln", 12}, {"Bonn", 22}, {"Aachen", 32}});
  const auto g = tsd::normalize(b.build());

  std::cout << tsd::instance_stats(g).dump() << "\n";
  tsd::SolveResult best;
  for (auto method : tsd::all_methods()) {
    auto r = tsd::solve(g, method);
    std::cout << tsd::to_string(method) << ": " << r.turns << " turns, order";
    for (const auto& name : r.order.names(g)) std::cout << ' ' << name;
    std::cout << "\n";
    best = r;
  }
  std::ofstream("demo.svg") << tsd::render_svg(g, best.order);
  std::cout << "wrote demo.svg\n";
}
