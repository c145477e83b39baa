#include "psplit/matrix_io.hpp"

#include "psplit/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace psplit {

namespace {

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& msg)
{
    throw Error(ErrorCode::Parse,
                std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
            ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r')
            ++i;
        if (i > start)
            out.push_back(s.substr(start, i - start));
    }
    return out;
}

bool parse_size(std::string_view tok, std::size_t& out)
{
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

bool parse_double(std::string_view tok, double& out)
{
    if (!tok.empty() && tok.front() == '+')
        tok.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

} // namespace

Matrix parse_matrix(std::string_view text, std::string_view source)
{
    std::size_t rows = 0, cols = 0;
    bool have_header = false;
    std::vector<double> entries;
    std::size_t rows_read = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        const auto tokens = split_ws(line);

        if (!have_header) {
            if (tokens.size() != 2 || !parse_size(tokens[0], rows) || !parse_size(tokens[1], cols))
                fail(source, line_no, "expected header \"m n\"");
            if (rows == 0 || cols == 0)
                fail(source, line_no, "dimensions must be positive");
            have_header = true;
            entries.reserve(rows * cols);
            continue;
        }
        if (rows_read == rows)
            fail(source, line_no, "more than " + std::to_string(rows) + " data rows");
        if (tokens.size() != cols)
            fail(source, line_no,
                 "expected " + std::to_string(cols) + " entries, found " +
                     std::to_string(tokens.size()));
        for (const auto tok : tokens) {
            double v = 0.0;
            if (!parse_double(tok, v))
                fail(source, line_no, "not a finite decimal: '" + std::string(tok) + "'");
            entries.push_back(v);
        }
        ++rows_read;
    }
    if (!have_header)
        fail(source, line_no, "missing header");
    if (rows_read != rows)
        fail(source, line_no,
             "expected " + std::to_string(rows) + " data rows, found " + std::to_string(rows_read));
    return Matrix(rows, cols, std::move(entries));
}

Matrix read_matrix_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Parse, path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str(), path.string());
}

Vector read_vector_file(const std::filesystem::path& path)
{
    const Matrix m = read_matrix_file(path);
    if (m.cols() != 1 && m.rows() != 1)
        throw Error(ErrorCode::Parse, path.string() + ": expected a single row or column");
    return Vector(m.data().begin(), m.data().end());
}

void write_matrix(std::ostream& os, const Matrix& m)
{
    os << m.rows() << ' ' << m.cols() << '\n';
    char buf[32];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            if (j)
                os << ' ';
            os << buf;
        }
        os << '\n';
    }
}

std::string format_matrix(const Matrix& m)
{
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::Parse, path.string() + ": cannot open for writing");
    write_matrix(out, m);
}

} // namespace psplit
