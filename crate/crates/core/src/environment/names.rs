//! Dimension names. These strings are a stable wire contract.

pub const SET_POINT: &str = "SetPoint";
pub const VELOCITY: &str = "Velocity";
pub const GAIN: &str = "Gain";
pub const SHIFT: &str = "Shift";
pub const CONSUMPTION: &str = "Consumption";
pub const FATIGUE: &str = "Fatigue";

pub const EFFECTIVE_VELOCITY: &str = "EffectiveVelocity";
pub const EFFECTIVE_GAIN: &str = "EffectiveGain";
pub const EFFECTIVE_SHIFT: &str = "EffectiveShift";

pub const MISCALIBRATION_DOMAIN: &str = "MisCalibrationDomain";
pub const MISCALIBRATION_SYSTEM_RESPONSE: &str = "MisCalibrationSystemResponse";
pub const MISCALIBRATION_PHI_IDX: &str = "MisCalibrationPhiIdx";
pub const MISCALIBRATION: &str = "MisCalibration";

pub const NOISE_FREE_CONSUMPTION: &str = "NoiseFreeConsumption";
pub const OPERATIONAL_COST_CONV: &str = "OperationalCostConv";
pub const MODIFIED_OPERATIONAL_COST: &str = "ModifiedOperationalCost";

pub const FATIGUE_LATENT_V: &str = "FatigueLatentV";
pub const FATIGUE_LATENT_G: &str = "FatigueLatentG";

/// `OperationalCost_i` holds `o(t - i)`.
pub const OPERATIONAL_COST: [&str; 10] = [
    "OperationalCost_0",
    "OperationalCost_1",
    "OperationalCost_2",
    "OperationalCost_3",
    "OperationalCost_4",
    "OperationalCost_5",
    "OperationalCost_6",
    "OperationalCost_7",
    "OperationalCost_8",
    "OperationalCost_9",
];

pub const DELTA_VELOCITY: &str = "DeltaVelocity";
pub const DELTA_GAIN: &str = "DeltaGain";
pub const DELTA_SHIFT: &str = "DeltaShift";
pub const ACTION: [&str; 3] = [DELTA_VELOCITY, DELTA_GAIN, DELTA_SHIFT];

pub const REWARD: &str = "RewardTotal";

/// Observable state.
pub const OBSERVATION: [&str; 6] = [SET_POINT, VELOCITY, GAIN, SHIFT, CONSUMPTION, FATIGUE];

/// Minimal markovian state.
pub const MARKOV_STATE: [&str; 20] = [
    SET_POINT,
    VELOCITY,
    GAIN,
    SHIFT,
    CONSUMPTION,
    FATIGUE,
    OPERATIONAL_COST[1],
    OPERATIONAL_COST[2],
    OPERATIONAL_COST[3],
    OPERATIONAL_COST[4],
    OPERATIONAL_COST[5],
    OPERATIONAL_COST[6],
    OPERATIONAL_COST[7],
    OPERATIONAL_COST[8],
    OPERATIONAL_COST[9],
    MISCALIBRATION_DOMAIN,
    MISCALIBRATION_SYSTEM_RESPONSE,
    MISCALIBRATION_PHI_IDX,
    FATIGUE_LATENT_V,
    FATIGUE_LATENT_G,
];

/// Extended (internal markovian) state.
pub const EXTENDED_STATE: [&str; 28] = [
    SET_POINT,
    VELOCITY,
    EFFECTIVE_VELOCITY,
    GAIN,
    EFFECTIVE_GAIN,
    SHIFT,
    EFFECTIVE_SHIFT,
    MISCALIBRATION_DOMAIN,
    MISCALIBRATION_SYSTEM_RESPONSE,
    MISCALIBRATION_PHI_IDX,
    MISCALIBRATION,
    NOISE_FREE_CONSUMPTION,
    CONSUMPTION,
    FATIGUE,
    OPERATIONAL_COST[0],
    OPERATIONAL_COST[1],
    OPERATIONAL_COST[2],
    OPERATIONAL_COST[3],
    OPERATIONAL_COST[4],
    OPERATIONAL_COST[5],
    OPERATIONAL_COST[6],
    OPERATIONAL_COST[7],
    OPERATIONAL_COST[8],
    OPERATIONAL_COST[9],
    OPERATIONAL_COST_CONV,
    MODIFIED_OPERATIONAL_COST,
    FATIGUE_LATENT_V,
    FATIGUE_LATENT_G,
];

/// Dimensions an external driver may write.
pub const EXOGENOUS: [&str; 1] = [SET_POINT];

/// FNV-1a over every name table; changes whenever the wire contract does.
pub const fn schema_fingerprint() -> u64 {
    const TABLES: [&[&str]; 5] = [
        &OBSERVATION,
        &MARKOV_STATE,
        &EXTENDED_STATE,
        &ACTION,
        &[REWARD],
    ];
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    let mut t = 0;
    while t < TABLES.len() {
        let table = TABLES[t];
        let mut n = 0;
        while n < table.len() {
            let bytes = table[n].as_bytes();
            let mut i = 0;
            while i < bytes.len() {
                hash ^= bytes[i] as u64;
                hash = hash.wrapping_mul(0x0100_0000_01b3);
                i += 1;
            }
            // separator
            hash ^= 0xff;
            hash = hash.wrapping_mul(0x0100_0000_01b3);
            n += 1;
        }
        t += 1;
    }
    hash
}
