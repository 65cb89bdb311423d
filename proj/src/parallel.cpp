#include "su11/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace su11 {

int configure_threads()
{
    if (const char* env = std::getenv("SU11KIT_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap > 0 && cap < omp_get_max_threads())
                omp_set_num_threads(cap);
        } catch (const std::exception&) {
        }
    }
    return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ stream);
    h = splitmix64(h ^ counter);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace su11
