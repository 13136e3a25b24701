#include "scenefst/app/render.h"

#include <algorithm>
#include <map>
#include <string>

#include "scenefst/errors.h"

namespace scenefst {
namespace {

const std::map<std::string, Rgb>& NamedColors() {
  static const std::map<std::string, Rgb> colors = {
      {"sun", {255, 165, 0}},
      {"sky", {0, 255, 255}},
      {"sea", {0, 0, 255}},
      {"sand", {139, 69, 19}},
  };
  return colors;
}

constexpr Rgb kFallback[] = {
    {255, 255, 255}, {0, 128, 0}, {128, 0, 128}, {255, 0, 0}, {128, 128, 128},
    {255, 255, 0},   {0, 0, 0},   {255, 0, 255}, {0, 128, 128}, {128, 128, 0},
};

}  // namespace

Rgb LabelColor(const std::string& label, const std::vector<std::string>& label_set) {
  const auto& named = NamedColors();
  if (auto it = named.find(label); it != named.end()) return it->second;
  std::size_t k = 0;
  for (const std::string& l : label_set) {
    if (l == label) break;
    if (!named.contains(l)) ++k;
  }
  if (k >= std::size(kFallback)) throw InputError("too many labels to render");
  return kFallback[k];
}

void WritePpm(std::ostream& os, int rows, int cols, const std::vector<std::string>& cell_labels,
              const std::vector<std::string>& label_set, int block) {
  if (rows <= 0 || cols <= 0 || block <= 0) throw InputError("invalid render geometry");
  if (cell_labels.size() != static_cast<std::size_t>(rows * cols)) {
    throw InputError("label map size does not match the grid");
  }
  std::vector<Rgb> colors;
  colors.reserve(cell_labels.size());
  for (const std::string& l : cell_labels) colors.push_back(LabelColor(l, label_set));

  os << "P6\n" << cols * block << ' ' << rows * block << "\n255\n";
  std::string line(static_cast<std::size_t>(cols * block) * 3, '\0');
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Rgb& rgb = colors[static_cast<std::size_t>(r * cols + c)];
      for (int x = 0; x < block; ++x) {
        const std::size_t at = static_cast<std::size_t>((c * block + x) * 3);
        line[at] = static_cast<char>(rgb[0]);
        line[at + 1] = static_cast<char>(rgb[1]);
        line[at + 2] = static_cast<char>(rgb[2]);
      }
    }
    for (int y = 0; y < block; ++y) os.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

std::vector<std::string> ReadPpm(std::istream& is, int rows, int cols,
                                 const std::vector<std::string>& label_set) {
  std::string magic;
  int width = 0;
  int height = 0;
  int maxval = 0;
  if (!(is >> magic >> width >> height >> maxval) || magic != "P6" || maxval != 255) {
    throw InputError("not a binary 8-bit PPM");
  }
  is.get();
  if (rows <= 0 || cols <= 0 || width % cols != 0 || height % rows != 0 ||
      width / cols != height / rows) {
    throw InputError("PPM size does not tile the grid");
  }
  const int block = width / cols;
  std::vector<unsigned char> pixels(static_cast<std::size_t>(width) * height * 3);
  if (!is.read(reinterpret_cast<char*>(pixels.data()),
               static_cast<std::streamsize>(pixels.size()))) {
    throw InputError("PPM pixel data is truncated");
  }
  const auto pixel = [&](int y, int x) {
    const std::size_t at = (static_cast<std::size_t>(y) * width + x) * 3;
    return Rgb{pixels[at], pixels[at + 1], pixels[at + 2]};
  };

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(rows * cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Rgb rgb = pixel(r * block, c * block);
      for (int y = 0; y < block; ++y) {
        for (int x = 0; x < block; ++x) {
          if (pixel(r * block + y, c * block + x) != rgb) {
            throw InputError("PPM cell block is not uniform");
          }
        }
      }
      const auto it = std::find_if(label_set.begin(), label_set.end(), [&](const std::string& l) {
        return LabelColor(l, label_set) == rgb;
      });
      if (it == label_set.end()) throw InputError("PPM color is outside the palette");
      labels.push_back(*it);
    }
  }
  return labels;
}

}  // namespace scenefst
