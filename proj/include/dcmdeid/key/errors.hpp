#pragma once

#include <stdexcept>

namespace dcmdeid::key {

class key_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Missing/misordered columns, wrong cell counts, inconsistent hierarchy.
class schema_error : public key_error {
public:
    using key_error::key_error;
};

/// Unknown action string, or an entry violating its action's invariants.
class bad_action : public key_error {
public:
    using key_error::key_error;
};

class bad_subcategory : public key_error {
public:
    using key_error::key_error;
};

class duplicate_original : public key_error {
public:
    using key_error::key_error;
};

class non_injective : public key_error {
public:
    using key_error::key_error;
};

}  // namespace dcmdeid::key
