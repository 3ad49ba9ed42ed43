#include "patbitext/io.hpp"

#include <iconv.h>
#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "patbitext/error.hpp"

namespace patbitext::io {

namespace {

bool has_gz_suffix(const fs::path& path) { return path.extension() == ".gz"; }

std::string read_gz(const fs::path& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw IoError(path.string(), "cannot open");
  std::string out;
  char buf[1 << 16];
  while (true) {
    const int n = gzread(f, buf, sizeof buf);
    if (n < 0) {
      int errnum = 0;
      const char* msg = gzerror(f, &errnum);
      std::string what = msg != nullptr ? msg : "gzread failed";
      gzclose(f);
      throw IoError(path.string(), what);
    }
    if (n == 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  gzclose(f);
  return out;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw IoError(path.string(), "no such file");
  if (has_gz_suffix(path)) return read_gz(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const fs::path& path, std::string_view content, bool gzip) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path.parent_path().string(), ec.message());
  }
  if (gzip) {
    gzFile f = gzopen(path.c_str(), "wb9");
    if (f == nullptr) throw IoError(path.string(), "cannot open for writing");
    if (!content.empty() &&
        gzwrite(f, content.data(), static_cast<unsigned>(content.size())) == 0) {
      gzclose(f);
      throw IoError(path.string(), "gzwrite failed");
    }
    if (gzclose(f) != Z_OK) throw IoError(path.string(), "gzclose failed");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(path.string(), "write failed");
}

fs::path resolve_maybe_gz(const fs::path& path) {
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) return path;
  fs::path gz = path;
  gz += ".gz";
  if (fs::is_regular_file(gz, ec)) return gz;
  return {};
}

std::vector<fs::path> list_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError(dir.string(), "not a directory");
  std::vector<fs::path> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string_view> split_lines(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    auto pos = content.find('\n', start);
    if (pos == std::string_view::npos) pos = content.size();
    auto line = content.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = pos + 1;
  }
  return lines;
}

std::string transcode_to_utf8(std::string_view bytes, const std::string& from_encoding) {
  iconv_t cd = iconv_open("UTF-8", from_encoding.c_str());
  if (cd == reinterpret_cast<iconv_t>(-1)) {
    throw Error(Errc::Usage, "unsupported encoding: " + from_encoding);
  }
  std::string out;
  out.resize(bytes.size() * 2 + 16);
  std::string in(bytes);
  char* in_ptr = in.data();
  std::size_t in_left = in.size();
  std::size_t written = 0;
  while (in_left > 0) {
    char* out_ptr = out.data() + written;
    std::size_t out_left = out.size() - written;
    const std::size_t rc = iconv(cd, &in_ptr, &in_left, &out_ptr, &out_left);
    written = out.size() - out_left;
    if (rc == static_cast<std::size_t>(-1)) {
      if (errno == E2BIG) {
        out.resize(out.size() * 2);
        continue;
      }
      iconv_close(cd);
      throw MalformedRecord("invalid " + from_encoding + " byte sequence at offset " +
                            std::to_string(in.size() - in_left));
    }
  }
  iconv_close(cd);
  out.resize(written);
  return out;
}

}  // namespace patbitext::io
