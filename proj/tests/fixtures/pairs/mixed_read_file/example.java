public static String readFile(String path) {
  BufferedReader br = new BufferedReader(new FileReader(path));
  StringBuilder sb = new StringBuilder();
  String line = br.readLine();
  while (line != null) {
    sb.append(line);
    line = br.readLine();
  }
  return sb.toString();
}
