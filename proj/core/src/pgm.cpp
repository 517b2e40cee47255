#include "mpcaps/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "mpcaps/errors.hpp"

namespace mpcaps {

void write_pgm(const Tensor& image, const std::string& path) {
    if (image.rank() != 2) throw std::invalid_argument("write_pgm: expected h x w tensor");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("write_pgm: cannot open " + path);
    out << "P5\n" << image.shape[1] << " " << image.shape[0] << "\n255\n";
    for (double v : image.data) {
        const double c = std::clamp(v, 0.0, 1.0);
        const unsigned char byte = static_cast<unsigned char>(std::lround(c * 255.0));
        out.write(reinterpret_cast<const char*>(&byte), 1);
    }
}

Tensor read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("read_pgm: cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P5") throw FormatError("read_pgm: not a binary graymap");
    std::size_t w, h;
    int maxval;
    in >> w >> h >> maxval;
    if (!in || maxval <= 0 || maxval > 255) throw FormatError("read_pgm: bad header");
    in.get();  // single whitespace after maxval
    Tensor t = Tensor::zeros({h, w});
    for (double& v : t.data) {
        unsigned char byte;
        in.read(reinterpret_cast<char*>(&byte), 1);
        if (!in) throw FormatError("read_pgm: truncated payload");
        v = static_cast<double>(byte) / maxval;
    }
    return t;
}

}  // namespace mpcaps
