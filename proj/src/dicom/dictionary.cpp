#include "dcmdeid/dicom/dictionary.hpp"

#include <algorithm>
#include <array>

namespace dcmdeid::dicom {

namespace {

// Sorted by tag.
constexpr std::array<dictionary_entry, 103> entries{{
    {{0x0002, 0x0000}, vr::UL, "FileMetaInformationGroupLength"},
    {{0x0002, 0x0001}, vr::OB, "FileMetaInformationVersion"},
    {{0x0002, 0x0002}, vr::UI, "MediaStorageSOPClassUID"},
    {{0x0002, 0x0003}, vr::UI, "MediaStorageSOPInstanceUID"},
    {{0x0002, 0x0010}, vr::UI, "TransferSyntaxUID"},
    {{0x0002, 0x0012}, vr::UI, "ImplementationClassUID"},
    {{0x0002, 0x0013}, vr::SH, "ImplementationVersionName"},
    {{0x0008, 0x0005}, vr::CS, "SpecificCharacterSet"},
    {{0x0008, 0x0008}, vr::CS, "ImageType"},
    {{0x0008, 0x0012}, vr::DA, "InstanceCreationDate"},
    {{0x0008, 0x0013}, vr::TM, "InstanceCreationTime"},
    {{0x0008, 0x0016}, vr::UI, "SOPClassUID"},
    {{0x0008, 0x0018}, vr::UI, "SOPInstanceUID"},
    {{0x0008, 0x0020}, vr::DA, "StudyDate"},
    {{0x0008, 0x0021}, vr::DA, "SeriesDate"},
    {{0x0008, 0x0022}, vr::DA, "AcquisitionDate"},
    {{0x0008, 0x0023}, vr::DA, "ContentDate"},
    {{0x0008, 0x002A}, vr::DT, "AcquisitionDateTime"},
    {{0x0008, 0x0030}, vr::TM, "StudyTime"},
    {{0x0008, 0x0031}, vr::TM, "SeriesTime"},
    {{0x0008, 0x0032}, vr::TM, "AcquisitionTime"},
    {{0x0008, 0x0033}, vr::TM, "ContentTime"},
    {{0x0008, 0x0050}, vr::SH, "AccessionNumber"},
    {{0x0008, 0x0060}, vr::CS, "Modality"},
    {{0x0008, 0x0070}, vr::LO, "Manufacturer"},
    {{0x0008, 0x0080}, vr::LO, "InstitutionName"},
    {{0x0008, 0x0081}, vr::ST, "InstitutionAddress"},
    {{0x0008, 0x0090}, vr::PN, "ReferringPhysicianName"},
    {{0x0008, 0x0092}, vr::ST, "ReferringPhysicianAddress"},
    {{0x0008, 0x0094}, vr::SH, "ReferringPhysicianTelephoneNumbers"},
    {{0x0008, 0x0100}, vr::SH, "CodeValue"},
    {{0x0008, 0x0102}, vr::SH, "CodingSchemeDesignator"},
    {{0x0008, 0x0104}, vr::LO, "CodeMeaning"},
    {{0x0008, 0x1010}, vr::SH, "StationName"},
    {{0x0008, 0x1030}, vr::LO, "StudyDescription"},
    {{0x0008, 0x103E}, vr::LO, "SeriesDescription"},
    {{0x0008, 0x1040}, vr::LO, "InstitutionalDepartmentName"},
    {{0x0008, 0x1048}, vr::PN, "PhysiciansOfRecord"},
    {{0x0008, 0x1050}, vr::PN, "PerformingPhysicianName"},
    {{0x0008, 0x1060}, vr::PN, "NameOfPhysiciansReadingStudy"},
    {{0x0008, 0x1070}, vr::PN, "OperatorsName"},
    {{0x0008, 0x1090}, vr::LO, "ManufacturerModelName"},
    {{0x0008, 0x1140}, vr::SQ, "ReferencedImageSequence"},
    {{0x0008, 0x1150}, vr::UI, "ReferencedSOPClassUID"},
    {{0x0008, 0x1155}, vr::UI, "ReferencedSOPInstanceUID"},
    {{0x0008, 0x2111}, vr::ST, "DerivationDescription"},
    {{0x0010, 0x0010}, vr::PN, "PatientName"},
    {{0x0010, 0x0020}, vr::LO, "PatientID"},
    {{0x0010, 0x0021}, vr::LO, "IssuerOfPatientID"},
    {{0x0010, 0x0030}, vr::DA, "PatientBirthDate"},
    {{0x0010, 0x0032}, vr::TM, "PatientBirthTime"},
    {{0x0010, 0x0040}, vr::CS, "PatientSex"},
    {{0x0010, 0x1000}, vr::LO, "OtherPatientIDs"},
    {{0x0010, 0x1001}, vr::PN, "OtherPatientNames"},
    {{0x0010, 0x1010}, vr::AS, "PatientAge"},
    {{0x0010, 0x1020}, vr::DS, "PatientSize"},
    {{0x0010, 0x1030}, vr::DS, "PatientWeight"},
    {{0x0010, 0x1040}, vr::LO, "PatientAddress"},
    {{0x0010, 0x1060}, vr::PN, "PatientMotherBirthName"},
    {{0x0010, 0x1090}, vr::LO, "MedicalRecordLocator"},
    {{0x0010, 0x2154}, vr::SH, "PatientTelephoneNumbers"},
    {{0x0010, 0x2160}, vr::SH, "EthnicGroup"},
    {{0x0010, 0x2180}, vr::SH, "Occupation"},
    {{0x0010, 0x21B0}, vr::LT, "AdditionalPatientHistory"},
    {{0x0010, 0x4000}, vr::LT, "PatientComments"},
    {{0x0018, 0x0015}, vr::CS, "BodyPartExamined"},
    {{0x0018, 0x0050}, vr::DS, "SliceThickness"},
    {{0x0018, 0x1000}, vr::LO, "DeviceSerialNumber"},
    {{0x0018, 0x1020}, vr::LO, "SoftwareVersions"},
    {{0x0018, 0x1030}, vr::LO, "ProtocolName"},
    {{0x0020, 0x000D}, vr::UI, "StudyInstanceUID"},
    {{0x0020, 0x000E}, vr::UI, "SeriesInstanceUID"},
    {{0x0020, 0x0010}, vr::SH, "StudyID"},
    {{0x0020, 0x0011}, vr::IS, "SeriesNumber"},
    {{0x0020, 0x0012}, vr::IS, "AcquisitionNumber"},
    {{0x0020, 0x0013}, vr::IS, "InstanceNumber"},
    {{0x0020, 0x0052}, vr::UI, "FrameOfReferenceUID"},
    {{0x0020, 0x0200}, vr::UI, "SynchronizationFrameOfReferenceUID"},
    {{0x0020, 0x4000}, vr::LT, "ImageComments"},
    {{0x0028, 0x0002}, vr::US, "SamplesPerPixel"},
    {{0x0028, 0x0004}, vr::CS, "PhotometricInterpretation"},
    {{0x0028, 0x0010}, vr::US, "Rows"},
    {{0x0028, 0x0011}, vr::US, "Columns"},
    {{0x0028, 0x0030}, vr::DS, "PixelSpacing"},
    {{0x0028, 0x0100}, vr::US, "BitsAllocated"},
    {{0x0028, 0x0101}, vr::US, "BitsStored"},
    {{0x0028, 0x0102}, vr::US, "HighBit"},
    {{0x0028, 0x0103}, vr::US, "PixelRepresentation"},
    {{0x0028, 0x1050}, vr::DS, "WindowCenter"},
    {{0x0028, 0x1051}, vr::DS, "WindowWidth"},
    {{0x0032, 0x1032}, vr::PN, "RequestingPhysician"},
    {{0x0032, 0x1060}, vr::LO, "RequestedProcedureDescription"},
    {{0x0038, 0x0300}, vr::LO, "CurrentPatientLocation"},
    {{0x0040, 0x0244}, vr::DA, "PerformedProcedureStepStartDate"},
    {{0x0040, 0x0253}, vr::SH, "PerformedProcedureStepID"},
    {{0x0040, 0x0254}, vr::LO, "PerformedProcedureStepDescription"},
    {{0x0040, 0xA010}, vr::CS, "RelationshipType"},
    {{0x0040, 0xA040}, vr::CS, "ValueType"},
    {{0x0040, 0xA043}, vr::SQ, "ConceptNameCodeSequence"},
    {{0x0040, 0xA124}, vr::UI, "UID"},
    {{0x0040, 0xA160}, vr::UT, "TextValue"},
    {{0x0040, 0xA730}, vr::SQ, "ContentSequence"},
    {{0x7FE0, 0x0010}, vr::OW, "PixelData"},
}};

static_assert(std::is_sorted(entries.begin(), entries.end(),
                             [](const auto& a, const auto& b) { return a.tag < b.tag; }));

}  // namespace

std::optional<dictionary_entry> lookup(dicom::tag t) {
    auto it = std::lower_bound(entries.begin(), entries.end(), t,
                               [](const dictionary_entry& e, dicom::tag k) { return e.tag < k; });
    if (it == entries.end() || it->tag != t) return std::nullopt;
    return *it;
}

vr implicit_vr(dicom::tag t) {
    if (auto e = lookup(t)) return e->vr;
    if (t.is_group_length()) return vr::UL;
    if (t.is_private_creator()) return vr::LO;
    return vr::UN;
}

std::string_view tag_name(dicom::tag t) {
    if (auto e = lookup(t)) return e->keyword;
    if (t.is_private_creator()) return "PrivateCreator";
    if (t.is_private()) return "PrivateTag";
    if (t.is_group_length()) return "GroupLength";
    return "Unknown";
}

}  // namespace dcmdeid::dicom
