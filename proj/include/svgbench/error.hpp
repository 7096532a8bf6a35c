#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace svgbench {

// Base for every data error raised by the toolkit. The CLI maps these to
// exit code 2; std::invalid_argument is reserved for bad configuration.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedXml : public Error {
public:
    MalformedXml(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class MalformedPathData : public Error {
public:
    MalformedPathData(const std::string& what, std::size_t command_index, std::size_t offset = 0)
        : Error(what + " (command " + std::to_string(command_index) + ")"),
          command_index_(command_index), offset_(offset) {}
    std::size_t command_index() const noexcept { return command_index_; }
    // Byte offset of the owning element in the document; 0 when parsed standalone.
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t command_index_;
    std::size_t offset_;
};

class NoResolvableSize : public Error {
public:
    NoResolvableSize() : Error("document has neither viewBox nor width/height") {}
};

class Unrepairable : public Error {
public:
    Unrepairable() : Error("no <svg opening tag; text cannot be repaired") {}
};

class EmptyGeometry : public Error {
public:
    EmptyGeometry() : Error("document has no drawable path") {}
    explicit EmptyGeometry(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch() : Error("image dimensions differ") {}
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class TooSmall : public Error {
public:
    TooSmall() : Error("image side smaller than the SSIM window") {}
    explicit TooSmall(const std::string& what) : Error(what) {}
};

class MalformedPpm : public Error {
public:
    using Error::Error;
};

class MalformedPng : public Error {
public:
    using Error::Error;
};

class UnsupportedPng : public Error {
public:
    using Error::Error;
};

class EmptyMask : public Error {
public:
    EmptyMask() : Error("mask has no foreground pixels") {}
};

class VocabLoadError : public Error {
public:
    using Error::Error;
};

class BadRatios : public Error {
public:
    using Error::Error;
};

class ManifestIoError : public Error {
public:
    using Error::Error;
};

}  // namespace svgbench
