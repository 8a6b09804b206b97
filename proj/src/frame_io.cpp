#include "vtext/frame_io.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <list>
#include <mutex>
#include <optional>
#include <unordered_map>

#include <json.hpp>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace fs = std::filesystem;

namespace vtext {

Frame to_grayscale(const RgbImage& rgb, std::size_t index) {
  Frame f(index, rgb.width, rgb.height);
  for (std::size_t i = 0; i < f.pixels.size(); ++i) {
    const std::uint8_t* p = &rgb.data[i * 3];
    f.pixels[i] = luma(p[0], p[1], p[2]);
  }
  return f;
}

namespace {

struct Size2 {
  int width = 0;
  int height = 0;
};

std::string lower_ext(const fs::path& p) {
  std::string e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
  return e;
}

bool is_frame_file(const fs::path& p) {
  const auto e = lower_ext(p);
  return e == ".png" || e == ".pgm";
}

std::optional<unsigned long long> first_number(const std::string& name) {
  auto it = std::find_if(name.begin(), name.end(), [](unsigned char c) { return std::isdigit(c); });
  if (it == name.end()) return std::nullopt;
  unsigned long long v = 0;
  for (; it != name.end() && std::isdigit(static_cast<unsigned char>(*it)); ++it) {
    v = v * 10 + static_cast<unsigned>(*it - '0');
  }
  return v;
}

void sort_numeric(std::vector<fs::path>& files) {
  std::stable_sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    const auto na = first_number(a.filename().string());
    const auto nb = first_number(b.filename().string());
    if (na && nb && *na != *nb) return *na < *nb;
    if (na.has_value() != nb.has_value()) return na.has_value();
    return a.filename().string() < b.filename().string();
  });
}

// Dimensions straight from the PNG IHDR chunk or the PGM header, so a long
// sequence can be validated without decoding every frame.
Size2 probe_size(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::DecodeError, path.string());
  std::array<unsigned char, 24> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  const auto got = in.gcount();

  static constexpr std::array<unsigned char, 8> png_sig{0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  if (got >= 24 && std::equal(png_sig.begin(), png_sig.end(), head.begin())) {
    auto be32 = [&](int off) {
      return (int{head[off]} << 24) | (int{head[off + 1]} << 16) | (int{head[off + 2]} << 8) |
             int{head[off + 3]};
    };
    const Size2 s{be32(16), be32(20)};
    if (s.width <= 0 || s.height <= 0) throw Error(ErrorCode::DecodeError, path.string());
    return s;
  }

  if (got >= 2 && head[0] == 'P' && head[1] == '5') {
    in.clear();
    in.seekg(2);
    std::array<long, 2> dims{};
    for (auto& d : dims) {
      // skip whitespace and comments
      for (;;) {
        int c = in.peek();
        if (c == '#') {
          std::string line;
          std::getline(in, line);
        } else if (std::isspace(c)) {
          in.get();
        } else {
          break;
        }
      }
      if (!(in >> d)) throw Error(ErrorCode::DecodeError, path.string());
    }
    if (dims[0] <= 0 || dims[1] <= 0) throw Error(ErrorCode::DecodeError, path.string());
    return {static_cast<int>(dims[0]), static_cast<int>(dims[1])};
  }
  throw Error(ErrorCode::DecodeError, path.string() + " (not PNG or binary PGM)");
}

cv::Mat decode(const fs::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (m.empty()) throw Error(ErrorCode::DecodeError, path.string());
  if (m.depth() == CV_16U) {
    cv::Mat m8;
    m.convertTo(m8, CV_8U, 1.0 / 257.0);
    m = m8;
  } else if (m.depth() != CV_8U) {
    throw Error(ErrorCode::DecodeError, path.string() + " (unsupported bit depth)");
  }
  return m;
}

std::vector<fs::path> read_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::NoFrames, manifest.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::DecodeError, manifest.string() + ": " + e.what());
  }
  const nlohmann::json& list = doc.is_object() && doc.contains("frames") ? doc["frames"] : doc;
  if (!list.is_array()) throw Error(ErrorCode::DecodeError, manifest.string() + ": expected an array of paths");
  std::vector<fs::path> files;
  for (const auto& entry : list) {
    if (!entry.is_string()) throw Error(ErrorCode::DecodeError, manifest.string() + ": non-string entry");
    fs::path p = entry.get<std::string>();
    files.push_back(p.is_absolute() ? p : manifest.parent_path() / p);
  }
  return files;
}

}  // namespace

std::vector<fs::path> list_frame_files(const fs::path& path) {
  std::error_code ec;
  std::vector<fs::path> files;
  if (fs::is_directory(path, ec)) {
    for (const auto& entry : fs::directory_iterator(path, ec)) {
      if (entry.is_regular_file() && is_frame_file(entry.path())) files.push_back(entry.path());
    }
    sort_numeric(files);
    return files;
  }
  if (fs::is_regular_file(path, ec) && lower_ext(path) == ".json") return read_manifest(path);

  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const std::string pattern = path.filename().string();
  if (!fs::is_directory(dir, ec)) return files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    if (fnmatch(pattern.c_str(), entry.path().filename().c_str(), 0) == 0) files.push_back(entry.path());
  }
  sort_numeric(files);
  return files;
}

Frame read_gray(const fs::path& path, std::size_t index) {
  const cv::Mat m = decode(path);
  Frame f(index, m.cols, m.rows);
  for (int y = 0; y < m.rows; ++y) {
    const std::uint8_t* row = m.ptr<std::uint8_t>(y);
    for (int x = 0; x < m.cols; ++x) {
      switch (m.channels()) {
        case 1: f.at(x, y) = row[x]; break;
        case 3: f.at(x, y) = luma(row[3 * x + 2], row[3 * x + 1], row[3 * x]); break;
        case 4: f.at(x, y) = luma(row[4 * x + 2], row[4 * x + 1], row[4 * x]); break;
        default: throw Error(ErrorCode::DecodeError, path.string() + " (unsupported channel count)");
      }
    }
  }
  return f;
}

RgbImage read_rgb(const fs::path& path) {
  const cv::Mat m = decode(path);
  RgbImage img(m.cols, m.rows);
  const int ch = m.channels();
  if (ch != 1 && ch != 3 && ch != 4) throw Error(ErrorCode::DecodeError, path.string());
  for (int y = 0; y < m.rows; ++y) {
    const std::uint8_t* row = m.ptr<std::uint8_t>(y);
    for (int x = 0; x < m.cols; ++x) {
      std::uint8_t* p = img.px(x, y);
      if (ch == 1) {
        p[0] = p[1] = p[2] = row[x];
      } else {
        p[0] = row[ch * x + 2];
        p[1] = row[ch * x + 1];
        p[2] = row[ch * x];
      }
    }
  }
  return img;
}

void write_image(const fs::path& path, const Frame& frame) {
  cv::Mat m(frame.height, frame.width, CV_8UC1, const_cast<std::uint8_t*>(frame.pixels.data()));
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), m);
  } catch (const cv::Exception&) {
    ok = false;
  }
  if (!ok) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

void write_image(const fs::path& path, const RgbImage& image) {
  cv::Mat m(image.height, image.width, CV_8UC3);
  for (int y = 0; y < image.height; ++y) {
    std::uint8_t* row = m.ptr<std::uint8_t>(y);
    for (int x = 0; x < image.width; ++x) {
      const std::uint8_t* p = image.px(x, y);
      row[3 * x] = p[2];
      row[3 * x + 1] = p[1];
      row[3 * x + 2] = p[0];
    }
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), m);
  } catch (const cv::Exception&) {
    ok = false;
  }
  if (!ok) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

// ---------------------------------------------------------------------------

class FrameSequence::Store {
 public:
  std::string source;
  double frame_rate = 25.0;
  int width = 0;
  int height = 0;
  std::size_t count = 0;

  std::vector<std::shared_ptr<const Frame>> resident;  // in-memory sequences
  std::vector<fs::path> files;                          // lazily decoded sequences

  std::shared_ptr<const Frame> load(std::size_t index) const {
    if (!resident.empty()) return resident.at(index);
    if (index >= files.size()) throw std::out_of_range("frame index " + std::to_string(index));

    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(index); it != cache_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second.second);
      return it->second.first;
    }
    auto frame = std::make_shared<const Frame>(read_gray(files[index], index));
    if (frame->width != width || frame->height != height) {
      throw Error(ErrorCode::DimensionMismatch, files[index].string());
    }
    lru_.push_front(index);
    cache_.emplace(index, std::make_pair(frame, lru_.begin()));
    if (cache_.size() > kCacheFrames) {
      cache_.erase(lru_.back());
      lru_.pop_back();
    }
    return frame;
  }

 private:
  // Large enough to hold a full temporal window plus the trigger pair.
  static constexpr std::size_t kCacheFrames = 128;

  mutable std::mutex mutex_;
  mutable std::list<std::size_t> lru_;
  mutable std::unordered_map<std::size_t,
                             std::pair<std::shared_ptr<const Frame>, std::list<std::size_t>::iterator>>
      cache_;
};

FrameSequence FrameSequence::from_frames(std::vector<Frame> frames, double frame_rate, std::string source) {
  auto store = std::make_shared<Store>();
  store->source = std::move(source);
  store->frame_rate = frame_rate;
  if (!frames.empty()) {
    store->width = frames.front().width;
    store->height = frames.front().height;
  }
  store->count = frames.size();
  store->resident.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    require_same_size(frames[i], frames.front(), "frame sequence");
    frames[i].index = i;
    store->resident.push_back(std::make_shared<const Frame>(std::move(frames[i])));
  }
  return FrameSequence(std::move(store));
}

std::size_t FrameSequence::count() const { return store_ ? store_->count : 0; }
int FrameSequence::width() const { return store_ ? store_->width : 0; }
int FrameSequence::height() const { return store_ ? store_->height : 0; }
double FrameSequence::frame_rate() const { return store_ ? store_->frame_rate : 25.0; }

const std::string& FrameSequence::source() const {
  static const std::string none;
  return store_ ? store_->source : none;
}

std::shared_ptr<const Frame> FrameSequence::at(std::size_t index) const {
  if (!store_) throw std::out_of_range("empty frame sequence");
  return store_->load(index);
}

FrameSequence open_sequence(const fs::path& path, double frame_rate) {
  auto files = list_frame_files(path);
  if (files.size() < 2) {
    throw Error(ErrorCode::NoFrames, path.string() + " matched " + std::to_string(files.size()) +
                                         " frame file(s), need at least 2");
  }
  const Size2 first = probe_size(files.front());
  for (const auto& f : files) {
    const Size2 s = probe_size(f);
    if (s.width != first.width || s.height != first.height) {
      throw Error(ErrorCode::DimensionMismatch,
                  f.string() + " is " + std::to_string(s.width) + "x" + std::to_string(s.height) +
                      ", expected " + std::to_string(first.width) + "x" + std::to_string(first.height));
    }
  }
  auto store = std::make_shared<FrameSequence::Store>();
  store->source = path.string();
  store->frame_rate = frame_rate;
  store->width = first.width;
  store->height = first.height;
  store->count = files.size();
  store->files = std::move(files);
  return FrameSequence(std::move(store));
}

}  // namespace vtext
