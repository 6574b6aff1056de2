//! Study-relative week bucketing on UTC calendar dates.

use chrono::{DateTime, Days, NaiveDate, Utc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum WindowError {
    #[error("study window must span at least one week")]
    NoWeeks,
    #[error("study window end overflows the calendar")]
    Overflow,
}

/// `num_weeks` consecutive 7-day buckets starting at `start` (UTC).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StudyWindow {
    start: NaiveDate,
    num_weeks: u32,
}

/// Where a timestamp falls relative to a [`StudyWindow`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeekSlot {
    Week(u32),
    OutOfWindow,
}

impl WeekSlot {
    pub fn week(self) -> Option<u32> {
        match self {
            WeekSlot::Week(w) => Some(w),
            WeekSlot::OutOfWindow => None,
        }
    }
}

impl StudyWindow {
    pub fn new(start: NaiveDate, num_weeks: u32) -> Result<Self, WindowError> {
        if num_weeks == 0 {
            return Err(WindowError::NoWeeks);
        }
        start
            .checked_add_days(Days::new(u64::from(num_weeks) * 7))
            .ok_or(WindowError::Overflow)?;
        Ok(Self { start, num_weeks })
    }

    pub fn start(&self) -> NaiveDate {
        self.start
    }

    pub fn num_weeks(&self) -> u32 {
        self.num_weeks
    }

    pub fn num_days(&self) -> u32 {
        self.num_weeks * 7
    }

    /// First date after the window.
    pub fn end_exclusive(&self) -> NaiveDate {
        self.start + Days::new(u64::from(self.num_days()))
    }

    /// Last date inside the window.
    pub fn last_day(&self) -> NaiveDate {
        self.end_exclusive() - Days::new(1)
    }

    pub fn contains(&self, date: NaiveDate) -> bool {
        date >= self.start && date < self.end_exclusive()
    }

    pub fn week_of_date(&self, date: NaiveDate) -> WeekSlot {
        if !self.contains(date) {
            return WeekSlot::OutOfWindow;
        }
        let offset = (date - self.start).num_days();
        WeekSlot::Week((offset / 7) as u32)
    }

    /// Calendar date on which `week` begins. Weeks past the window are
    /// still computed arithmetically.
    pub fn week_start(&self, week: u32) -> NaiveDate {
        self.start + Days::new(u64::from(week) * 7)
    }
}

pub fn week_index(t: &DateTime<Utc>, window: &StudyWindow) -> WeekSlot {
    window.week_of_date(t.date_naive())
}
