#ifndef SCENEFST_APP_RENDER_H_
#define SCENEFST_APP_RENDER_H_

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace scenefst {

using Rgb = std::array<std::uint8_t, 3>;

// sun orange, sky cyan, sea blue, sand brown; other labels get fixed
// fallback colors in label-set order.
Rgb LabelColor(const std::string& label, const std::vector<std::string>& label_set);

// Binary PPM (P6) with one `block` x `block` square per cell.
void WritePpm(std::ostream& os, int rows, int cols, const std::vector<std::string>& cell_labels,
              const std::vector<std::string>& label_set, int block = 8);

// Inverse of WritePpm; throws InputError on malformed input, non-uniform
// blocks or colors outside the palette.
std::vector<std::string> ReadPpm(std::istream& is, int rows, int cols,
                                 const std::vector<std::string>& label_set);

}  // namespace scenefst

#endif  // SCENEFST_APP_RENDER_H_
