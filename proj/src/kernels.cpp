#include "mmlb/kernels.hpp"

#ifdef MMLB_HAVE_OPENMP
#include <omp.h>
#endif

namespace mmlb::kernels {

int max_threads() {
#ifdef MMLB_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace mmlb::kernels
