#include "icc/image_io.hpp"

#include "icc/error.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace icc {

namespace {

RasterImage from_bgr(const cv::Mat& bgr) {
    RasterImage img(bgr.cols, bgr.rows);
    for (int y = 0; y < bgr.rows; ++y) {
        const auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) img.at(x, y) = {row[x][2], row[x][1], row[x][0]};
    }
    return img;
}

std::vector<std::uint8_t> encode(const cv::Mat& mat) {
    std::vector<std::uint8_t> buf;
    const std::vector<int> params{cv::IMWRITE_PNG_COMPRESSION, 6};
    if (!cv::imencode(".png", mat, buf, params)) throw IOError("PNG encoding failed");
    return buf;
}

}  // namespace

RasterImage decode_image(std::span<const std::uint8_t> bytes) {
    if (bytes.empty()) throw IOError("empty image buffer");
    const cv::Mat raw(1, static_cast<int>(bytes.size()), CV_8UC1, const_cast<std::uint8_t*>(bytes.data()));
    const cv::Mat bgr = cv::imdecode(raw, cv::IMREAD_COLOR);
    if (bgr.empty()) throw IOError("could not decode image data");
    return from_bgr(bgr);
}

RasterImage read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOError("cannot open image '" + path.string() + "'");
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return decode_image(bytes);
    } catch (const IOError&) {
        throw IOError("cannot decode image '" + path.string() + "'");
    }
}

std::vector<std::uint8_t> encode_png(const RasterImage& img) {
    cv::Mat bgr(img.height(), img.width(), CV_8UC3);
    for (int y = 0; y < img.height(); ++y) {
        auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < img.width(); ++x) {
            const Rgb p = img.at(x, y);
            row[x] = {p.b, p.g, p.r};
        }
    }
    return encode(bgr);
}

std::vector<std::uint8_t> encode_mask_png(const BinaryMask& mask) {
    cv::Mat gray(mask.height(), mask.width(), CV_8UC1);
    for (int y = 0; y < mask.height(); ++y) {
        auto* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < mask.width(); ++x) row[x] = mask.at(x, y) ? 255 : 0;
    }
    return encode(gray);
}

BinaryMask read_mask(const std::filesystem::path& path) {
    const cv::Mat gray = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    if (gray.empty()) throw IOError("cannot read mask '" + path.string() + "'");
    BinaryMask mask(gray.cols, gray.rows);
    for (int y = 0; y < gray.rows; ++y) {
        const auto* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < gray.cols; ++x) mask.at(x, y) = row[x] >= 128 ? 1 : 0;
    }
    return mask;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    static std::atomic<unsigned> counter{0};
    std::ostringstream suffix;
    suffix << ".tmp-" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "-" << counter++;
    std::filesystem::path tmp = path;
    tmp += suffix.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IOError("cannot write '" + tmp.string() + "'");
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IOError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IOError("cannot move output into '" + path.string() + "'");
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
    write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace icc
