#ifndef BFT_VERSION_HPP
#define BFT_VERSION_HPP

namespace bft {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bft

#endif  // BFT_VERSION_HPP
