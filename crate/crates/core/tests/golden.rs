use fsmga::export::{parse_hdl, parse_mif, parse_truth_table, ExportBundle};
use fsmga::{to_ram_image, MealyMachine, REFERENCE4_FSM};

const TT: &str = include_str!("golden/reference4.tt");
const MIF: &str = include_str!("golden/reference4.mif");
const HDL: &str = include_str!("golden/reference4.v");

/// Hand-derived from reference4.fsm: word = next << 2 | out at (state << 1) | in.
const WORDS: [u32; 8] = [0b0100, 0b0001, 0b1010, 0b0001, 0b1100, 0b0110, 0b0001, 0b1100];

fn bundle() -> ExportBundle {
    let m = MealyMachine::from_fsm_text(REFERENCE4_FSM).unwrap();
    ExportBundle::for_machine(&m, "reference4").unwrap()
}

#[test]
fn reference_ram_image_matches_hand_table() {
    let m = MealyMachine::from_fsm_text(REFERENCE4_FSM).unwrap();
    let ram = to_ram_image(&m, m.spec()).unwrap();
    assert_eq!((ram.address_bits(), ram.data_bits()), (3, 4));
    assert_eq!(ram.words(), &WORDS);
}

#[test]
fn truth_table_matches_golden() {
    assert_eq!(bundle().truth_table_text, TT);
}

#[test]
fn mif_matches_golden() {
    assert_eq!(bundle().mif_text, MIF);
}

#[test]
fn hdl_matches_golden() {
    assert_eq!(bundle().hdl_text, HDL);
}

#[test]
fn golden_files_parse_to_hand_table() {
    for ram in [parse_truth_table(TT), parse_mif(MIF), parse_hdl(HDL)] {
        assert_eq!(ram.unwrap().words(), &WORDS);
    }
}
