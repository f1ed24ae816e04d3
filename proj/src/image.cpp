#include "tlisd/image.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "tlisd/errors.hpp"

namespace tlisd {

namespace fs = std::filesystem;

std::int64_t MaskImage::positive_count() const {
    std::int64_t n = 0;
    for (std::uint8_t v : values) n += (v != 0);
    return n;
}

void ImageSequence::validate() const {
    if (frames.size() < 2) {
        throw ParameterError("image sequence needs at least 2 frames, got " +
                             std::to_string(frames.size()));
    }
    const int w = frames.front().width, h = frames.front().height;
    for (std::size_t j = 0; j < frames.size(); ++j) {
        if (frames[j].width != w || frames[j].height != h) {
            throw ParameterError("frame " + std::to_string(j) + " has mismatched dimensions");
        }
        if (j < masks.size() && masks[j] &&
            (masks[j]->width != w || masks[j]->height != h)) {
            throw ParameterError("mask " + std::to_string(j) + " has mismatched dimensions");
        }
    }
}

ImageGray luma_image(const ImageRgb8& frame) {
    ImageGray out;
    out.width = frame.width;
    out.height = frame.height;
    out.values.resize(frame.pixel_count());
    for (std::int64_t i = 0; i < frame.pixel_count(); ++i) {
        const std::uint8_t* px = frame.pixels.data() + 3 * i;
        out.values[i] = (0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]) / 255.0;
    }
    return out;
}

ImageRgb8 load_image_rgb8(const std::string& path) {
    cv::Mat bgr = cv::imread(path, cv::IMREAD_COLOR);
    if (bgr.empty()) throw IoError("cannot read image: " + path);
    ImageRgb8 out;
    out.width = bgr.cols;
    out.height = bgr.rows;
    out.pixels.resize(static_cast<std::size_t>(3) * bgr.cols * bgr.rows);
    for (int y = 0; y < bgr.rows; ++y) {
        const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            std::uint8_t* px = out.px(x, y);
            px[0] = row[x][2];
            px[1] = row[x][1];
            px[2] = row[x][0];
        }
    }
    return out;
}

void save_image_rgb8(const ImageRgb8& img, const std::string& path) {
    cv::Mat bgr(img.height, img.width, CV_8UC3);
    for (int y = 0; y < img.height; ++y) {
        cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < img.width; ++x) {
            const std::uint8_t* px = img.px(x, y);
            row[x] = cv::Vec3b(px[2], px[1], px[0]);
        }
    }
    if (!cv::imwrite(path, bgr)) throw IoError("cannot write image: " + path);
}

void save_image_gray(const ImageGray& img, const std::string& path) {
    cv::Mat gray(img.height, img.width, CV_8UC1);
    for (int y = 0; y < img.height; ++y) {
        std::uint8_t* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < img.width; ++x) {
            const double v = std::clamp(img.at(x, y), 0.0, 1.0);
            row[x] = static_cast<std::uint8_t>(std::lround(v * 255.0));
        }
    }
    if (!cv::imwrite(path, gray)) throw IoError("cannot write image: " + path);
}

MaskImage load_mask(const std::string& path) {
    cv::Mat gray = cv::imread(path, cv::IMREAD_GRAYSCALE);
    if (gray.empty()) throw IoError("cannot read mask: " + path);
    MaskImage out;
    out.width = gray.cols;
    out.height = gray.rows;
    out.values.resize(static_cast<std::size_t>(gray.cols) * gray.rows, 0);
    out.excluded.resize(out.values.size(), 0);
    bool any_excluded = false;
    for (int y = 0; y < gray.rows; ++y) {
        const std::uint8_t* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < gray.cols; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * gray.cols + x;
            const std::uint8_t v = row[x];
            if (v == 170 || v == 85) { // CDnet unknown / outside ROI
                out.excluded[idx] = 1;
                any_excluded = true;
            } else {
                out.values[idx] = v >= 128 ? 1 : 0;
            }
        }
    }
    if (!any_excluded) out.excluded.clear();
    return out;
}

void save_mask(const MaskImage& mask, const std::string& path) {
    cv::Mat gray(mask.height, mask.width, CV_8UC1);
    for (int y = 0; y < mask.height; ++y) {
        std::uint8_t* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < mask.width; ++x) {
            row[x] = mask.at(x, y) ? 255 : 0;
        }
    }
    if (!cv::imwrite(path, gray)) throw IoError("cannot write mask: " + path);
}

ImageSequence load_sequence(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("not a directory: " + dir);
    }
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") {
            files.push_back(entry.path().string());
        }
    }
    if (files.empty()) {
        throw IoError("no PNG/JPEG frames found in: " + dir);
    }
    std::sort(files.begin(), files.end());

    ImageSequence seq;
    const fs::path gt_dir = fs::path(dir) / "groundtruth";
    for (const auto& file : files) {
        seq.frames.push_back(load_image_rgb8(file));
        seq.names.push_back(fs::path(file).stem().string());
        std::optional<MaskImage> mask;
        if (fs::is_directory(gt_dir)) {
            for (const char* ext : {".png", ".jpg", ".jpeg"}) {
                const fs::path candidate = gt_dir / (seq.names.back() + ext);
                if (fs::exists(candidate)) {
                    mask = load_mask(candidate.string());
                    break;
                }
            }
        }
        seq.masks.push_back(std::move(mask));
    }
    seq.validate();
    return seq;
}

} // namespace tlisd
