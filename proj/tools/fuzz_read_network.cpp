#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string_view>

#include "thd/core.hpp"
#include "thd/error.hpp"
#include "thd/io.hpp"

extern "C" int LLVMFuzzerTestOneInput(const std::uint8_t* data, std::size_t size) {
  const std::string_view bytes(reinterpret_cast<const char*>(data), size);
  for (bool strict : {true, false}) {
    thd::io::NetworkDocument doc;
    try {
      doc = thd::io::read_network(bytes, thd::io::ReadOptions{strict});
    } catch (const thd::Error&) {
      continue;
    }
    if (doc.edges.size() + doc.skipped.size() != doc.records) std::abort();
    const thd::Hypergraph h = thd::build_hypergraph(doc.edges);
    const auto again = thd::io::read_network(thd::io::canonical_network(h, doc.name, doc.time_unit));
    if (!(thd::build_hypergraph(again.edges) == h)) std::abort();
  }
  return 0;
}
