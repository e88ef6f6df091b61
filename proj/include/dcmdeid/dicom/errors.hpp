#pragma once

#include <stdexcept>
#include <string>

namespace dcmdeid::dicom {

/// Base for everything the codec rejects.
class dicom_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Stream ended in the middle of an element or item.
class truncated_stream : public dicom_error {
public:
    using dicom_error::dicom_error;
};

/// No "DICM" marker after the preamble (strict mode).
class bad_magic : public dicom_error {
public:
    using dicom_error::dicom_error;
};

/// Compressed, encapsulated, big-endian or missing transfer syntax.
class unsupported_transfer_syntax : public dicom_error {
public:
    using dicom_error::dicom_error;
};

/// Value does not fit the length field of its encoding.
class value_too_long : public dicom_error {
public:
    using dicom_error::dicom_error;
};

/// Structurally invalid content (odd numeric lengths, stray delimiters, ...).
class malformed_element : public dicom_error {
public:
    using dicom_error::dicom_error;
};

}  // namespace dcmdeid::dicom
