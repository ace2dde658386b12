#ifndef HEATLAB_PARALLEL_HPP
#define HEATLAB_PARALLEL_HPP

#include <functional>

namespace heatlab {

// Worker cap for parallel_for; results are independent of the setting because
// every item writes only its own output slot.
void set_max_threads(int n);
int max_threads();

void parallel_for(int n_items, const std::function<void(int)>& fn);

} // namespace heatlab

#endif
