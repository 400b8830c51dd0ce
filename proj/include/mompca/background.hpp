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

#pragma once

// Background/foreground separation for grayscale frame sequences.
//
// Each pixel is one observation and each frame one feature, so f frames of
// m x n pixels become an (m·n) x f data matrix. Row index = r·n + c for the
// pixel at row r, column c of the frame grid; column j = frame j.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "mompca/matrix.hpp"
#include "mompca/mompca.hpp"

namespace mompca {

/// One grayscale frame, intensities in [0, 1], row-major.
struct Frame {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> pixels;

  friend bool operator==(const Frame&, const Frame&) = default;
};

class FrameSequence {
 public:
  /// Throws ShapeMismatch unless there are at least two frames of one shape.
  explicit FrameSequence(std::vector<Frame> frames);

  std::size_t frame_count() const noexcept { return frames_.size(); }
  std::size_t height() const noexcept { return frames_.front().height; }
  std::size_t width() const noexcept { return frames_.front().width; }
  std::size_t pixel_count() const noexcept { return height() * width(); }
  const Frame& frame(std::size_t j) const { return frames_.at(j); }
  const std::vector<Frame>& frames() const noexcept { return frames_; }

  friend bool operator==(const FrameSequence&, const FrameSequence&) = default;

 private:
  std::vector<Frame> frames_;
};

DataMatrix frames_to_matrix(const FrameSequence& seq);
/// Inverse of frames_to_matrix. Values are copied unchanged.
FrameSequence matrix_to_frames(const DataMatrix& x, std::size_t height, std::size_t width);

struct Separation {
  FrameSequence background;
  std::vector<double> object_map;  // one L1 residual per pixel, row-major
  std::size_t height = 0;
  std::size_t width = 0;
  FitReport report;
};

/// Fits on the pixel matrix, reconstructs every pixel row and clamps the
/// reconstruction to [0, 1] for the background. object_map holds the L1 norm
/// of the unclamped residual of each pixel row.
Separation separate(const FrameSequence& seq, const FitConfig& config);

/// Binary PGM (P5). Reading accepts maxval 1..255 and comments in the header;
/// writing always uses maxval 255 and quantizes with round-half-away-from-zero.
Frame read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Frame& frame);
/// Encodes a frame as P5 bytes in memory (used for atomic file writes).
std::vector<std::uint8_t> encode_pgm(const Frame& frame);
Frame decode_pgm(const std::vector<std::uint8_t>& bytes);

/// Reads every `NNNNNN.pgm` file in a directory, ordered by file name.
FrameSequence read_frame_directory(const std::filesystem::path& dir);
/// Writes frames as 000000.pgm, 000001.pgm, ...
void write_frame_directory(const std::filesystem::path& dir, const FrameSequence& seq);

/// Static diagonal-gradient scene with a bright square sliding left to right
/// along a horizontal band, wrapping at the right edge. `trajectory` marks
/// every pixel the square covers in at least one frame.
struct SyntheticVideo {
  FrameSequence frames;
  std::vector<std::uint8_t> trajectory;
};
SyntheticVideo moving_square_video(std::size_t height, std::size_t width, std::size_t frame_count,
                                   std::size_t square, std::size_t step);

/// Object map rescaled by its maximum into a displayable frame.
Frame heat_image(const std::vector<double>& object_map, std::size_t height, std::size_t width);

}  // namespace mompca
