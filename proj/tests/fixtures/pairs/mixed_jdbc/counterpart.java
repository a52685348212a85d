Connection conn = null;
try {
  conn = DriverManager.getConnection(url, user, pass);
  Statement st = conn.createStatement();
  st.executeUpdate(query);
} catch (SQLException e) {
  LOG.error("update failed", e);
} finally {
  if (conn != null) {
    conn.close();
  }
}
