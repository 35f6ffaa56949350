#pragma once

#include <cstddef>
#include <functional>

namespace smallball {

// Splits [0, count) into `chunks` fixed pieces and runs them on up to
// `threads` workers. Chunk boundaries do not depend on `threads`, so callers
// that merge per-chunk results in chunk order get identical output for any
// thread count.
void parallel_chunks(std::size_t count, std::size_t chunks, unsigned threads,
                     const std::function<void(std::size_t chunk, std::size_t begin,
                                              std::size_t end)>& body);

}  // namespace smallball
