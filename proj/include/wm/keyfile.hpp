#ifndef WM_KEYFILE_HPP
#define WM_KEYFILE_HPP

#include <string>

#include "wm/codec.hpp"

namespace wm {

// Text key format, one "name value..." pair per line:
//
//   cwmkey 1
//   alpha <real>
//   blocks <k>
//   side <n>
//   y_warning <0|1>
//   s <4k reals>
//   c1 <4 reals>
//   ...
//   ck <4 reals>
//
// Reals are printed with 17 significant digits so parse(serialize(key))
// reproduces every double bit-exactly.
std::string serialize_key(const WatermarkKey& key);

// require_blocks = false skips the c-lines entirely (detect-only mode); the
// returned key then has empty blocks.
WatermarkKey parse_key(const std::string& text, bool require_blocks = true);

void write_key(const WatermarkKey& key, const std::string& path);
WatermarkKey read_key(const std::string& path, bool require_blocks = true);

} // namespace wm

#endif
