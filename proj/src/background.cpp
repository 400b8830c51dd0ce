/*
 * Copyright 2026 The MoMPCA Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mompca/background.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mompca/error.hpp"
#include "mompca/io.hpp"
#include "mompca/parallel.hpp"

namespace mompca {
namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string header_token(const std::vector<std::uint8_t>& bytes, std::size_t& pos) {
  for (;;) {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  std::string token;
  while (pos < bytes.size() && !std::isspace(bytes[pos]) && bytes[pos] != '#') token += static_cast<char>(bytes[pos++]);
  require(!token.empty(), ErrorCode::ParseError, "truncated PGM header");
  return token;
}

std::size_t header_number(const std::vector<std::uint8_t>& bytes, std::size_t& pos) {
  const std::string token = header_token(bytes, pos);
  require(std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }),
          ErrorCode::ParseError, "bad PGM header field '" + token + "'");
  return std::stoul(token);
}

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

FrameSequence::FrameSequence(std::vector<Frame> frames) : frames_(std::move(frames)) {
  require(frames_.size() >= 2, ErrorCode::ShapeMismatch, "a frame sequence needs at least two frames");
  const Frame& f0 = frames_.front();
  require(f0.height >= 1 && f0.width >= 1, ErrorCode::ShapeMismatch, "frames must be non-empty");
  for (std::size_t j = 0; j < frames_.size(); ++j) {
    const Frame& f = frames_[j];
    require(f.height == f0.height && f.width == f0.width && f.pixels.size() == f.height * f.width,
            ErrorCode::ShapeMismatch,
            "frame " + std::to_string(j) + " is " + std::to_string(f.height) + "x" +
                std::to_string(f.width) + ", expected " + std::to_string(f0.height) + "x" +
                std::to_string(f0.width));
  }
}

DataMatrix frames_to_matrix(const FrameSequence& seq) {
  const std::size_t pixels = seq.pixel_count();
  const std::size_t f = seq.frame_count();
  Matrix m(pixels, f);
  for (std::size_t j = 0; j < f; ++j) {
    const auto& px = seq.frame(j).pixels;
    for (std::size_t i = 0; i < pixels; ++i) m(i, j) = px[i];
  }
  return DataMatrix(std::move(m));
}

FrameSequence matrix_to_frames(const DataMatrix& x, std::size_t height, std::size_t width) {
  require(x.rows() == height * width, ErrorCode::ShapeMismatch,
          "matrix rows do not match the frame size");
  std::vector<Frame> frames(x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    frames[j].height = height;
    frames[j].width = width;
    frames[j].pixels.resize(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) frames[j].pixels[i] = x(i, j);
  }
  return FrameSequence(std::move(frames));
}

Separation separate(const FrameSequence& seq, const FitConfig& config) {
  const DataMatrix x = frames_to_matrix(seq);
  const MompcaModel model = fit(x, config);
  const DataMatrix recon = reconstruct(model, x);

  Matrix clamped = recon.matrix();
  for (double& v : clamped.values()) v = std::clamp(v, 0.0, 1.0);

  std::vector<double> object_map(x.rows());
  parallel_for(x.rows(), [&](std::size_t i) {
    double sum = 0.0;
    const auto a = x.row(i);
    const auto b = recon.row(i);
    for (std::size_t j = 0; j < a.size(); ++j) sum += std::abs(a[j] - b[j]);
    object_map[i] = sum;
  });

  return Separation{matrix_to_frames(DataMatrix(std::move(clamped)), seq.height(), seq.width()),
                    std::move(object_map), seq.height(), seq.width(), model.report()};
}

std::vector<std::uint8_t> encode_pgm(const Frame& frame) {
  const std::string header =
      "P5\n" + std::to_string(frame.width) + " " + std::to_string(frame.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + frame.pixels.size());
  for (const double v : frame.pixels) out.push_back(quantize(v));
  return out;
}

Frame decode_pgm(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  require(header_token(bytes, pos) == "P5", ErrorCode::ParseError, "not a binary PGM (P5) file");
  Frame f;
  f.width = header_number(bytes, pos);
  f.height = header_number(bytes, pos);
  const std::size_t maxval = header_number(bytes, pos);
  require(f.width >= 1 && f.height >= 1, ErrorCode::ParseError, "PGM has zero size");
  require(maxval >= 1 && maxval <= 255, ErrorCode::ParseError,
          "PGM maxval " + std::to_string(maxval) + " unsupported (must be 1..255)");
  require(pos < bytes.size() && std::isspace(bytes[pos]), ErrorCode::ParseError, "malformed PGM header");
  ++pos;
  const std::size_t count = f.width * f.height;
  require(bytes.size() - pos >= count, ErrorCode::ParseError, "PGM pixel data is truncated");
  f.pixels.resize(count);
  const double scale = static_cast<double>(maxval);
  for (std::size_t i = 0; i < count; ++i) f.pixels[i] = static_cast<double>(bytes[pos + i]) / scale;
  return f;
}

Frame read_pgm(const std::filesystem::path& path) {
  try {
    return decode_pgm(read_binary_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) fail(ErrorCode::ParseError, path.string() + ": " + e.message());
    throw;
  }
}

void write_pgm(const std::filesystem::path& path, const Frame& frame) {
  write_file_atomic(path, encode_pgm(frame));
}

FrameSequence read_frame_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) fail(ErrorCode::IoError, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Frame> frames;
  frames.reserve(files.size());
  for (const auto& p : files) frames.push_back(read_pgm(p));
  return FrameSequence(std::move(frames));
}

void write_frame_directory(const std::filesystem::path& dir, const FrameSequence& seq) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create directory " + dir.string());
  for (std::size_t j = 0; j < seq.frame_count(); ++j) {
    std::string name = std::to_string(j);
    name = std::string(name.size() < 6 ? 6 - name.size() : 0, '0') + name + ".pgm";
    write_pgm(dir / name, seq.frame(j));
  }
}

SyntheticVideo moving_square_video(std::size_t height, std::size_t width, std::size_t frame_count,
                                   std::size_t square, std::size_t step) {
  require(square >= 1 && square <= height && square <= width, ErrorCode::InvalidInputs,
          "square must fit inside the frame");
  const std::size_t top = (height - square) / 2;
  const std::size_t span = width - square + 1;
  std::vector<std::uint8_t> trajectory(height * width, 0);
  std::vector<Frame> frames(frame_count);
  for (std::size_t t = 0; t < frame_count; ++t) {
    Frame& f = frames[t];
    f.height = height;
    f.width = width;
    f.pixels.resize(height * width);
    for (std::size_t r = 0; r < height; ++r)
      for (std::size_t c = 0; c < width; ++c)
        f.pixels[r * width + c] =
            0.2 + 0.3 * static_cast<double>(r + c) / static_cast<double>(height + width);
    const std::size_t left = (t * step) % span;
    for (std::size_t r = top; r < top + square; ++r)
      for (std::size_t c = left; c < left + square; ++c) {
        f.pixels[r * width + c] = 1.0;
        trajectory[r * width + c] = 1;
      }
  }
  return {FrameSequence(std::move(frames)), std::move(trajectory)};
}

Frame heat_image(const std::vector<double>& object_map, std::size_t height, std::size_t width) {
  require(object_map.size() == height * width, ErrorCode::ShapeMismatch,
          "object map does not match the frame size");
  const double top = object_map.empty() ? 0.0 : *std::max_element(object_map.begin(), object_map.end());
  Frame f{height, width, std::vector<double>(object_map.size(), 0.0)};
  if (top > 0.0)
    for (std::size_t i = 0; i < object_map.size(); ++i) f.pixels[i] = object_map[i] / top;
  return f;
}

}  // namespace mompca
