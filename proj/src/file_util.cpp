#include "flskit/file_util.hpp"

#include <atomic>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "flskit/errors.hpp"

namespace flskit {

namespace {

std::filesystem::path make_temp_name(const std::filesystem::path& path) {
    static std::atomic<unsigned> counter{0};
    auto tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter.fetch_add(1));
    return tmp;
}

void write_bytes_atomic(const std::filesystem::path& path, const char* data,
                        std::size_t size) {
    const auto tmp = make_temp_name(path);
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
        f.write(data, static_cast<std::streamsize>(size));
        f.flush();
        if (!f) {
            f.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        std::filesystem::remove(tmp, ec2);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() +
                      ": " + ec.message());
    }
}

} // namespace

void write_file_atomic(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes) {
    write_bytes_atomic(path, reinterpret_cast<const char*>(bytes.data()),
                       bytes.size());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
    write_bytes_atomic(path, text.data(), text.size());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for reading");
    std::string content((std::istreambuf_iterator<char>(f)),
                        std::istreambuf_iterator<char>());
    if (f.bad()) throw IoError("read failed for " + path.string());
    return content;
}

} // namespace flskit
