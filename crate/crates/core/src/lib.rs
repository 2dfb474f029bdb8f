//! Core library for `crudecast`: calendar-aware daily series, media-signal
//! extraction, econometric screening (correlation / ADF / Granger), and
//! ARIMA/ARIMAX estimation, forecasting, and evaluation.

pub mod calendar;
pub mod series;
pub mod signals;
pub mod stats;
pub mod text;

pub use calendar::TradingCalendar;
pub use series::{align_to_calendar, DailySeries, RawObservations, SeriesError, MAX_LAG};
pub use signals::SignalSet;
