#pragma once

#include <functional>
#include <future>
#include <vector>

namespace windcert {

// Applies f to 0..count-1 with at most `jobs` worker threads.  Results land in
// index order, so output is deterministic regardless of scheduling.
template <class Result>
std::vector<Result> parallel_index_map(std::size_t count, int jobs,
                                       const std::function<Result(std::size_t)>& f) {
  std::vector<Result> results(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = f(i);
    return results;
  }
  std::vector<std::future<void>> workers;
  const std::size_t stride = static_cast<std::size_t>(jobs);
  workers.reserve(stride);
  for (std::size_t w = 0; w < stride; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += stride) results[i] = f(i);
    }));
  }
  for (auto& worker : workers) worker.get();
  return results;
}

}  // namespace windcert
