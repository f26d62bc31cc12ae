#ifndef VORTEXLAB_VERSION_HPP
#define VORTEXLAB_VERSION_HPP

namespace vortexlab {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
