#include "strel/monitor.hpp"

namespace strel {

template class Monitor<BooleanDomain>;
template class Monitor<MaxMinDomain>;

}  // namespace strel
