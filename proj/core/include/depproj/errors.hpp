#ifndef DEPPROJ_ERRORS_HPP
#define DEPPROJ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace depproj {

// Base class for all data errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file. `line` is 1-based (0 when unknown);
// `sentence_index` is the 0-based position of the offending sentence in
// the stream (npos when unknown).
struct ParseError : Error {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    ParseError(const std::string& msg, std::size_t line_no,
               std::size_t sentence_idx = npos)
        : Error(format(msg, line_no, sentence_idx)),
          line(line_no),
          sentence_index(sentence_idx) {}

    std::size_t line = 0;
    std::size_t sentence_index = npos;

private:
    static std::string format(const std::string& msg, std::size_t line_no,
                              std::size_t sentence_idx) {
        std::string out = msg + " at line " + std::to_string(line_no);
        if (sentence_idx != npos)
            out += " (sentence " + std::to_string(sentence_idx + 1) + ")";
        return out;
    }
};

}  // namespace depproj

#endif  // DEPPROJ_ERRORS_HPP
