#include "fkz/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <queue>
#include <string>

#include "fkz/dct2d.hpp"
#include "fkz/error.hpp"

namespace fkz {

namespace {

constexpr std::uint8_t kMagic[4] = {'F', 'K', 'Z', '1'};
constexpr int kMaxCodeLen = 32;
constexpr std::uint32_t kMaxDim = 1u << 20;
constexpr std::uint64_t kMaxPixels = 1ull << 28;

// ---- little-endian byte helpers ----

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }
void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_f32(std::vector<std::uint8_t>& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

class Cursor {
 public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint16_t u16() {
    auto b = take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32() {
    auto b = take(4);
    return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    auto b = take(8);
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::span<const std::uint8_t> take(std::size_t count) {
    if (pos_ + count > bytes_.size()) fail(Errc::truncated_stream, "truncated stream");
    auto s = bytes_.subspan(pos_, count);
    pos_ += count;
    return s;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// ---- bit-level I/O, MSB first ----

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void put(std::uint32_t code, int nbits) {
    for (int i = nbits - 1; i >= 0; --i) {
      acc_ = (acc_ << 1) | ((code >> i) & 1u);
      if (++filled_ == 8) {
        out_.push_back(static_cast<std::uint8_t>(acc_));
        acc_ = 0;
        filled_ = 0;
      }
    }
  }
  void flush() {
    if (filled_ > 0) {
      out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - filled_)));
      acc_ = 0;
      filled_ = 0;
    }
  }

 private:
  std::vector<std::uint8_t>& out_;
  std::uint32_t acc_ = 0;
  int filled_ = 0;
};

class BitReader {
 public:
  explicit BitReader(Cursor& cur) : cur_(cur) {}

  int bit() {
    if (filled_ == 0) {
      acc_ = cur_.u8();
      filled_ = 8;
    }
    --filled_;
    return (acc_ >> filled_) & 1;
  }
  std::uint64_t bits(int n) {
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 1) | static_cast<unsigned>(bit());
    return v;
  }

 private:
  Cursor& cur_;
  std::uint8_t acc_ = 0;
  int filled_ = 0;
};

void write_gamma(BitWriter& bw, std::uint32_t value) {
  const int width = std::bit_width(value);  // value >= 1
  bw.put(0, width - 1);
  bw.put(value, width);
}

std::uint32_t read_gamma(BitReader& br) {
  int zeros = 0;
  while (br.bit() == 0)
    if (++zeros >= kMaxCodeLen) fail(Errc::corrupt_payload, "corrupt payload: bad run length");
  std::uint64_t v = 1;
  for (int i = 0; i < zeros; ++i) v = (v << 1) | static_cast<unsigned>(br.bit());
  return static_cast<std::uint32_t>(v);
}

// ---- canonical prefix code ----

// Huffman code lengths for the given counts (zero counts get length 0),
// deterministic under ties, capped at kMaxCodeLen.
std::vector<int> code_lengths(const std::vector<std::uint64_t>& counts) {
  const int alphabet = static_cast<int>(counts.size());
  std::vector<int> lens(alphabet, 0);
  std::vector<int> live;
  for (int t = 0; t < alphabet; ++t)
    if (counts[t] > 0) live.push_back(t);
  if (live.empty()) return lens;
  if (live.size() == 1) {
    lens[live[0]] = 1;
    return lens;
  }

  struct Node {
    std::uint64_t count;
    int id;  // tie-break: lower id first (leaves get ids in token order)
    int left = -1, right = -1;
  };
  std::vector<Node> nodes;
  nodes.reserve(live.size() * 2);
  for (int t : live) nodes.push_back({counts[t], static_cast<int>(nodes.size()), -1, -1});

  auto cmp = [&](int a, int b) {
    if (nodes[a].count != nodes[b].count) return nodes[a].count > nodes[b].count;
    return nodes[a].id > nodes[b].id;
  };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> heap(cmp);
  for (std::size_t i = 0; i < live.size(); ++i) heap.push(static_cast<int>(i));
  while (heap.size() > 1) {
    const int a = heap.top();
    heap.pop();
    const int b = heap.top();
    heap.pop();
    nodes.push_back({nodes[a].count + nodes[b].count, static_cast<int>(nodes.size()), a, b});
    heap.push(static_cast<int>(nodes.size()) - 1);
  }

  // Depth-first depth assignment from the root.
  std::vector<std::pair<int, int>> work{{static_cast<int>(nodes.size()) - 1, 0}};
  std::vector<int> depth(nodes.size(), 0);
  while (!work.empty()) {
    auto [id, d] = work.back();
    work.pop_back();
    depth[id] = d;
    if (nodes[id].left >= 0) {
      work.push_back({nodes[id].left, d + 1});
      work.push_back({nodes[id].right, d + 1});
    }
  }
  for (std::size_t i = 0; i < live.size(); ++i) lens[live[i]] = depth[i];

  // Cap at kMaxCodeLen and restore the Kraft inequality if that overflowed it.
  bool capped = false;
  for (int t : live)
    if (lens[t] > kMaxCodeLen) {
      lens[t] = kMaxCodeLen;
      capped = true;
    }
  if (capped) {
    const std::uint64_t budget = 1ull << kMaxCodeLen;
    auto kraft = [&] {
      std::uint64_t k = 0;
      for (int t : live) k += 1ull << (kMaxCodeLen - lens[t]);
      return k;
    };
    while (kraft() > budget) {
      int pick = -1;
      for (int t : live)
        if (lens[t] < kMaxCodeLen && (pick < 0 || lens[t] > lens[pick])) pick = t;
      ++lens[pick];
    }
  }
  return lens;
}

struct CanonicalCode {
  // Per token: codeword + length (length 0 = absent).
  std::vector<std::uint32_t> codes;
  std::vector<int> lens;
};

CanonicalCode canonical_from_lengths(const std::vector<int>& lens) {
  CanonicalCode cc;
  cc.lens = lens;
  cc.codes.assign(lens.size(), 0);
  std::vector<int> order;
  for (int t = 0; t < static_cast<int>(lens.size()); ++t)
    if (lens[t] > 0) order.push_back(t);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lens[a] < lens[b]; });
  std::uint32_t code = 0;
  int prev_len = 0;
  for (int t : order) {
    code <<= (lens[t] - prev_len);
    cc.codes[t] = code;
    ++code;
    prev_len = lens[t];
  }
  return cc;
}

// Decode tables per length: first canonical code and index into the
// length-sorted token list.
struct CanonicalDecoder {
  std::vector<std::uint32_t> first_code;   // per length 1..kMaxCodeLen
  std::vector<std::uint32_t> first_index;  // per length
  std::vector<std::uint32_t> count;        // per length
  std::vector<std::uint32_t> tokens;       // sorted by (length, token)

  explicit CanonicalDecoder(const std::vector<int>& lens) {
    count.assign(kMaxCodeLen + 1, 0);
    for (int l : lens)
      if (l > 0) ++count[l];
    std::uint64_t kraft = 0;
    for (int l = 1; l <= kMaxCodeLen; ++l) kraft += static_cast<std::uint64_t>(count[l]) << (kMaxCodeLen - l);
    if (kraft > (1ull << kMaxCodeLen))
      fail(Errc::malformed_code_table, "malformed code table: oversubscribed code lengths");

    for (int t = 0; t < static_cast<int>(lens.size()); ++t)
      if (lens[t] > 0) tokens.push_back(t);
    std::stable_sort(tokens.begin(), tokens.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return lens[a] < lens[b]; });
    first_code.assign(kMaxCodeLen + 1, 0);
    first_index.assign(kMaxCodeLen + 1, 0);
    std::uint32_t code = 0, index = 0;
    for (int l = 1; l <= kMaxCodeLen; ++l) {
      code <<= 1;
      first_code[l] = code;
      first_index[l] = index;
      code += count[l];
      index += count[l];
    }
  }

  std::uint32_t next_token(BitReader& br) const {
    std::uint32_t code = 0;
    for (int len = 1; len <= kMaxCodeLen; ++len) {
      code = (code << 1) | static_cast<unsigned>(br.bit());
      if (count[len] > 0 && code - first_code[len] < count[len])
        return tokens[first_index[len] + (code - first_code[len])];
    }
    fail(Errc::corrupt_payload, "corrupt payload: invalid codeword");
  }
};

// ---- reflect padding ----

int mirror_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  int p = i % period;
  if (p < 0) p += period;
  return p < n ? p : period - 1 - p;
}

CoefficientPlane reflect_pad(const CoefficientPlane& plane, int rows, int cols) {
  CoefficientPlane out(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out.at(r, c) = plane.at(mirror_index(r, plane.rows), mirror_index(c, plane.cols));
  return out;
}

int round_up(int value, int multiple) { return (value + multiple - 1) / multiple * multiple; }

void validate_finite(float v, const char* what) {
  if (!std::isfinite(v)) fail(Errc::format_error, std::string("container: non-finite ") + what);
}

}  // namespace

// ---- entropy coder ----

std::vector<std::uint8_t> entropy_encode(std::span<const std::uint16_t> symbols, int quant_bits) {
  if (quant_bits < 1 || quant_bits > 16) fail(Errc::invalid_argument, "entropy_encode: bits out of range");
  const std::uint32_t alphabet = (1u << quant_bits) + 1;  // literals + run marker
  const std::uint32_t zero_run = 1u << quant_bits;
  for (std::uint16_t s : symbols)
    if (s >= zero_run) fail(Errc::invalid_argument, "entropy_encode: symbol out of range for quant bits");

  // Tokenize: maximal zero runs collapse to (marker, length).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tokens;  // (token, run length)
  tokens.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size();) {
    if (symbols[i] == 0) {
      std::size_t j = i;
      while (j < symbols.size() && symbols[j] == 0) ++j;
      tokens.emplace_back(zero_run, static_cast<std::uint32_t>(j - i));
      i = j;
    } else {
      tokens.emplace_back(symbols[i], 0);
      ++i;
    }
  }

  std::vector<std::uint64_t> counts(alphabet, 0);
  for (const auto& [t, run] : tokens) ++counts[t];
  const auto lens = code_lengths(counts);
  const auto code = canonical_from_lengths(lens);

  std::vector<std::uint8_t> out;
  put_u32(out, static_cast<std::uint32_t>(symbols.size()));
  put_u8(out, static_cast<std::uint8_t>(quant_bits));
  std::uint32_t distinct = 0;
  for (int l : lens)
    if (l > 0) ++distinct;
  put_u32(out, distinct);
  for (std::uint32_t t = 0; t < alphabet; ++t)
    if (lens[t] > 0) {
      put_u32(out, t);
      put_u8(out, static_cast<std::uint8_t>(lens[t]));
    }

  BitWriter bw(out);
  for (const auto& [t, run] : tokens) {
    bw.put(code.codes[t], code.lens[t]);
    if (t == zero_run) write_gamma(bw, run);
  }
  bw.flush();
  return out;
}

std::vector<std::uint16_t> entropy_decode(std::span<const std::uint8_t> bytes, int quant_bits) {
  if (quant_bits < 1 || quant_bits > 16) fail(Errc::invalid_argument, "entropy_decode: bits out of range");
  const std::uint32_t alphabet = (1u << quant_bits) + 1;
  const std::uint32_t zero_run = 1u << quant_bits;

  Cursor cur(bytes);
  const std::uint32_t n_source = cur.u32();
  const int bits_in_header = cur.u8();
  if (bits_in_header != quant_bits)
    fail(Errc::malformed_code_table, "malformed code table: quantizer bits mismatch");
  const std::uint32_t distinct = cur.u32();
  if (distinct > alphabet) fail(Errc::malformed_code_table, "malformed code table: too many symbols");
  if (n_source > 0 && distinct == 0) fail(Errc::malformed_code_table, "malformed code table: empty");

  std::vector<int> lens(alphabet, 0);
  std::int64_t prev = -1;
  for (std::uint32_t i = 0; i < distinct; ++i) {
    const std::uint32_t token = cur.u32();
    const int len = cur.u8();
    if (token >= alphabet || static_cast<std::int64_t>(token) <= prev)
      fail(Errc::malformed_code_table, "malformed code table: bad token order");
    if (len < 1 || len > kMaxCodeLen) fail(Errc::malformed_code_table, "malformed code table: bad code length");
    lens[token] = len;
    prev = token;
  }
  CanonicalDecoder decoder(lens);

  std::vector<std::uint16_t> out;
  out.reserve(n_source);
  BitReader br(cur);
  while (out.size() < n_source) {
    const std::uint32_t token = decoder.next_token(br);
    if (token == zero_run) {
      const std::uint32_t run = read_gamma(br);
      if (out.size() + run > n_source) fail(Errc::corrupt_payload, "corrupt payload: zero run overflows");
      out.insert(out.end(), run, 0);
    } else {
      out.push_back(static_cast<std::uint16_t>(token));
    }
  }
  return out;
}

// ---- container ----

std::size_t CompressedContainer::byte_size() const {
  return 29 + 4ull * mean.size() + 4ull * eigenvectors.size() + 4ull * quant_params.size() + 8 + payload.size();
}

std::vector<std::uint8_t> serialize_container(const CompressedContainer& c) {
  std::vector<std::uint8_t> out;
  out.reserve(c.byte_size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u8(out, c.version);
  put_u8(out, static_cast<std::uint8_t>(c.pipeline));
  put_u32(out, c.rows);
  put_u32(out, c.cols);
  put_u32(out, c.orig_rows);
  put_u32(out, c.orig_cols);
  put_u16(out, c.block_size);
  put_u16(out, c.n);
  put_u16(out, c.m);
  put_u8(out, c.quant_bits);
  for (float v : c.mean) put_f32(out, v);
  for (float v : c.eigenvectors) put_f32(out, v);
  for (float v : c.quant_params) put_f32(out, v);
  put_u64(out, c.payload.size());
  out.insert(out.end(), c.payload.begin(), c.payload.end());
  return out;
}

CompressedContainer parse_container(std::span<const std::uint8_t> bytes) {
  Cursor cur(bytes);
  const auto magic = cur.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) fail(Errc::bad_magic, "bad magic");

  CompressedContainer c;
  c.version = cur.u8();
  if (c.version != 1) fail(Errc::unsupported_version, "unsupported container version " + std::to_string(c.version));
  const std::uint8_t pipe = cur.u8();
  if (pipe > 1) fail(Errc::format_error, "container: unknown pipeline id " + std::to_string(pipe));
  c.pipeline = static_cast<Pipeline>(pipe);
  c.rows = cur.u32();
  c.cols = cur.u32();
  c.orig_rows = cur.u32();
  c.orig_cols = cur.u32();
  c.block_size = cur.u16();
  c.n = cur.u16();
  c.m = cur.u16();
  c.quant_bits = cur.u8();

  if (c.rows == 0 || c.cols == 0 || c.rows > kMaxDim || c.cols > kMaxDim ||
      static_cast<std::uint64_t>(c.rows) * c.cols > kMaxPixels)
    fail(Errc::format_error, "container: implausible dimensions");
  if (c.block_size == 0 || c.rows % c.block_size != 0 || c.cols % c.block_size != 0)
    fail(Errc::format_error, "container: dims not divisible by block size");
  const std::uint64_t blocks =
      (static_cast<std::uint64_t>(c.rows) / c.block_size) * (c.cols / c.block_size);
  if (blocks != c.n) fail(Errc::format_error, "container: block count inconsistent with dims");
  if (c.m == 0 || c.m > c.n) fail(Errc::format_error, "container: retained channel count out of range");
  if (c.orig_rows == 0 || c.orig_rows > c.rows || c.orig_cols == 0 || c.orig_cols > c.cols)
    fail(Errc::format_error, "container: original dims out of range");
  if (c.quant_bits < 1 || c.quant_bits > 16) fail(Errc::format_error, "container: quant bits out of range");

  c.mean.resize(c.n);
  for (auto& v : c.mean) {
    v = cur.f32();
    validate_finite(v, "mean");
  }
  c.eigenvectors.resize(static_cast<std::size_t>(c.n) * c.m);
  for (auto& v : c.eigenvectors) {
    v = cur.f32();
    validate_finite(v, "eigenvector");
  }
  c.quant_params.resize(2ull * c.m);
  for (std::size_t i = 0; i < c.quant_params.size(); ++i) {
    c.quant_params[i] = cur.f32();
    validate_finite(c.quant_params[i], "quantizer parameter");
    if (i % 2 == 1 && !(c.quant_params[i] > 0.0f))
      fail(Errc::format_error, "container: non-positive quantizer step");
  }
  const std::uint64_t payload_len = cur.u64();
  if (payload_len != cur.remaining())
    fail(payload_len > cur.remaining() ? Errc::truncated_stream : Errc::format_error,
         payload_len > cur.remaining() ? "truncated stream" : "container: trailing bytes after payload");
  const auto payload = cur.take(payload_len);
  c.payload.assign(payload.begin(), payload.end());
  return c;
}

void write_container(const CompressedContainer& c, std::ostream& out) {
  const auto bytes = serialize_container(c);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Errc::io_error, "container write failed");
}

CompressedContainer read_container(std::istream& in) {
  std::vector<std::uint8_t> bytes(std::istreambuf_iterator<char>(in), {});
  return parse_container(bytes);
}

// ---- pipelines ----

ImageAnalysis analyze_image(const ImageRaster& img, Pipeline pipeline, int block_size, bool pad) {
  if (block_size < 2) fail(Errc::invalid_argument, "block size must be >= 2");
  if (img.rows < 1 || img.cols < 1) fail(Errc::invalid_argument, "empty image");

  CoefficientPlane plane = to_plane(img);
  const int rows = round_up(img.rows, block_size);
  const int cols = round_up(img.cols, block_size);
  if (rows != img.rows || cols != img.cols) {
    if (!pad)
      fail(Errc::invalid_argument,
           "image " + std::to_string(img.rows) + "x" + std::to_string(img.cols) +
               " is not divisible by block size " + std::to_string(block_size) +
               "; enable padding to round up to " + std::to_string(rows) + "x" + std::to_string(cols));
    plane = reflect_pad(plane, rows, cols);
  }
  const std::int64_t blocks = (static_cast<std::int64_t>(rows) / block_size) * (cols / block_size);
  if (blocks > 65535)
    fail(Errc::invalid_argument, "block size " + std::to_string(block_size) + " yields " +
                                     std::to_string(blocks) + " sub-blocks (limit 65535)");

  if (pipeline == Pipeline::fct_klt) plane = dct2_forward(plane);

  ImageAnalysis a;
  a.pipeline = pipeline;
  a.block_size = block_size;
  a.rows = rows;
  a.cols = cols;
  a.orig_rows = img.rows;
  a.orig_cols = img.cols;
  SubBlockStack stack = tile_to_stack(plane, block_size);
  a.basis = compute_basis(stack);
  a.transformed = klt_forward(stack, a.basis);
  return a;
}

CompressedContainer compress_from_analysis(const ImageAnalysis& a, int retained_channels, int quant_bits) {
  const int n = a.transformed.channels;
  if (retained_channels < 1 || retained_channels > n)
    fail(Errc::invalid_argument, "retained channel count out of range");
  const SubBlockStack pruned = prune(a.transformed, retained_channels);
  const QuantizedStack qs = quantize(pruned, quant_bits);

  CompressedContainer c;
  c.pipeline = a.pipeline;
  c.rows = static_cast<std::uint32_t>(a.rows);
  c.cols = static_cast<std::uint32_t>(a.cols);
  c.orig_rows = static_cast<std::uint32_t>(a.orig_rows);
  c.orig_cols = static_cast<std::uint32_t>(a.orig_cols);
  c.block_size = static_cast<std::uint16_t>(a.block_size);
  c.n = static_cast<std::uint16_t>(n);
  c.m = static_cast<std::uint16_t>(retained_channels);
  c.quant_bits = static_cast<std::uint8_t>(quant_bits);
  c.mean.assign(a.basis.mean.begin(), a.basis.mean.end());
  c.eigenvectors.resize(static_cast<std::size_t>(n) * retained_channels);
  for (std::size_t i = 0; i < c.eigenvectors.size(); ++i)
    c.eigenvectors[i] = static_cast<float>(a.basis.eigenvectors[i]);  // first m columns
  c.quant_params.resize(2ull * retained_channels);
  for (int j = 0; j < retained_channels; ++j) {
    c.quant_params[2ull * j] = static_cast<float>(qs.params[j].offset);
    float step = static_cast<float>(qs.params[j].step);
    // f32 narrowing must not produce a degenerate step.
    if (!(step > 0.0f)) step = std::numeric_limits<float>::min();
    c.quant_params[2ull * j + 1] = step;
  }
  c.payload = entropy_encode(qs.symbols, quant_bits);
  return c;
}

CompressedContainer compress(const ImageRaster& img, const CompressConfig& config) {
  if (!(config.keep_fraction > 0.0 && config.keep_fraction <= 1.0))
    fail(Errc::invalid_argument, "keep fraction must be in (0, 1]");
  if (config.quant_bits < 1 || config.quant_bits > 16)
    fail(Errc::invalid_argument, "quant bits must be in [1, 16]");
  const ImageAnalysis a = analyze_image(img, config.pipeline, config.block_size, config.pad);
  const int m = config.force_channels ? *config.force_channels
                                      : select_channels(a.basis.eigenvalues, config.keep_fraction);
  return compress_from_analysis(a, m, config.quant_bits);
}

ImageRaster decompress(const CompressedContainer& c) {
  const int positions = static_cast<int>(c.block_size) * c.block_size;
  const auto symbols = entropy_decode(c.payload, c.quant_bits);
  if (symbols.size() != static_cast<std::size_t>(c.m) * positions)
    fail(Errc::corrupt_payload, "corrupt payload: symbol count does not match m x B^2");

  QuantizedStack qs;
  qs.block_rows = c.block_size;
  qs.block_cols = c.block_size;
  qs.grid_rows = static_cast<int>(c.rows) / c.block_size;
  qs.grid_cols = static_cast<int>(c.cols) / c.block_size;
  qs.channels = c.m;
  qs.quant_bits = c.quant_bits;
  qs.params.resize(c.m);
  for (int j = 0; j < c.m; ++j) {
    qs.params[j].offset = c.quant_params[2ull * j];
    qs.params[j].step = c.quant_params[2ull * j + 1];
  }
  qs.symbols = symbols;

  const SubBlockStack retained = dequantize(qs);
  std::vector<double> mean(c.mean.begin(), c.mean.end());
  std::vector<double> v_cols(c.eigenvectors.begin(), c.eigenvectors.end());
  const SubBlockStack full = klt_inverse_retained(retained, mean, v_cols, c.n);
  CoefficientPlane plane = stack_to_plane(full);
  if (c.pipeline == Pipeline::fct_klt) plane = dct2_inverse(plane);

  if (c.orig_rows != c.rows || c.orig_cols != c.cols) {
    CoefficientPlane cropped(static_cast<int>(c.orig_rows), static_cast<int>(c.orig_cols));
    for (int r = 0; r < cropped.rows; ++r)
      for (int col = 0; col < cropped.cols; ++col) cropped.at(r, col) = plane.at(r, col);
    plane = std::move(cropped);
  }
  return clamp_to_raster(plane, 8);
}

}  // namespace fkz
